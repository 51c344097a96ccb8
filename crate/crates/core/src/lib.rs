//! Exact computations around rainbow-clique-free edge colorings.
//!
//! * [`graph`]: dense graphs, Turán graphs, cliques, k-partite closeness,
//!   small-graph enumeration and graph6 I/O.
//! * [`template`]: color-list templates and their rainbow copies of `K_4`.
//! * [`counting`]: exact counts of rainbow-`K_k`-free colorings and the
//!   extremal search over small graphs.
//! * [`container`]: the rainbow hypergraph, its co-degrees, and the container
//!   hypothesis calculator.
//! * [`stability`]: the cleaning procedure, critical sets and the
//!   supersaturation bound.

pub mod container;
pub mod counting;
pub mod error;
pub mod exact;
pub mod graph;
pub mod stability;
pub mod template;

pub use error::{Error, Result};
pub use exact::Count;
pub use graph::{EdgeId, Graph, VertexSet};
pub use template::{CopyReading, Template};
