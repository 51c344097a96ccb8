//! Cleaning a template host by Operations 1 and 2, critical triangles,
//! edges and vertices, and the supersaturation bound.
//!
//! A cleaning state is the graph `G_0` (template host without singleton-list
//! edges) restricted to a shrinking set of alive vertices. All guards are
//! exact.

mod guard;
mod supersat;

pub use supersat::supersaturation_bound;

use crate::error::{Error, Result};
use crate::exact::{euler_pow_bounds, pow_le, rational_from, serde_dec, Count};
use crate::graph::{bit, full_mask, vertices_of, Graph, VertexSet};
use crate::template::{CopyReading, Template};
use guard::{compare_powers, SmoothProduct};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::str::FromStr;

/// Which operation is tried first at every step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum OperationOrder {
    #[default]
    #[serde(rename = "1,2")]
    OneFirst,
    #[serde(rename = "2,1")]
    TwoFirst,
}

impl FromStr for OperationOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace(' ', "").as_str() {
            "1,2" => Ok(OperationOrder::OneFirst),
            "2,1" => Ok(OperationOrder::TwoFirst),
            other => Err(Error::InvalidArgument(format!("operation order {other:?}, expected 1,2 or 2,1"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CleaningConfig {
    pub r: u32,
    #[serde(serialize_with = "serde_dec::rational")]
    pub xi: BigRational,
    /// Original vertex count: used by the stopping floor `ξ² n` and the
    /// critical-triangle threshold `n^(5/6)`.
    pub n: usize,
    pub order: OperationOrder,
    pub reading: CopyReading,
}

impl CleaningConfig {
    pub fn new(r: u32, xi: BigRational, n: usize) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidArgument(format!("r = {r}, need r >= 2")));
        }
        if !xi.is_positive() || xi >= BigRational::one() {
            return Err(Error::InvalidArgument(format!("ξ = {xi} outside (0, 1)")));
        }
        Ok(CleaningConfig {
            r,
            xi,
            n,
            order: OperationOrder::default(),
            reading: CopyReading::default(),
        })
    }

    pub fn for_template(t: &Template, xi: BigRational) -> Result<Self> {
        CleaningConfig::new(t.r(), xi, t.host().n())
    }

    pub fn with_order(mut self, order: OperationOrder) -> Self {
        self.order = order;
        self
    }

    pub fn with_reading(mut self, reading: CopyReading) -> Self {
        self.reading = reading;
        self
    }

    fn xi_sq(&self) -> BigRational {
        &self.xi * &self.xi
    }

    fn below_floor(&self, n_i: usize) -> bool {
        rational_from(n_i as u64) <= self.xi_sq() * rational_from(self.n as u64)
    }
}

/// Lower end of a certified bracket of `δ / (300 e^6)`.
pub fn default_xi(delta: &BigRational) -> Result<BigRational> {
    if !delta.is_positive() {
        return Err(Error::InvalidArgument("δ must be positive".into()));
    }
    Ok(delta / (rational_from(300u32) * euler_pow_bounds(6).hi))
}

/// Host of `t` without the edges whose list has exactly one color.
pub fn remove_singleton_edges(t: &Template) -> Graph {
    t.host().spanning_subgraph(|e| t.list_size(e) != 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CleaningState {
    graph: Graph,
    alive: VertexSet,
}

impl CleaningState {
    pub fn initial(t: &Template) -> Self {
        CleaningState {
            graph: remove_singleton_edges(t),
            alive: full_mask(t.host().n()),
        }
    }

    /// `graph` must be a spanning subgraph of the template host; vertices
    /// outside `alive` are dropped.
    pub fn new(t: &Template, graph: &Graph, alive: VertexSet) -> Result<Self> {
        if !graph.is_spanning_subgraph_of(t.host()) {
            return Err(Error::InvalidArgument("state graph is not a spanning subgraph of the host".into()));
        }
        let alive = alive & full_mask(graph.n());
        Ok(CleaningState {
            graph: graph.restrict_to(alive),
            alive,
        })
    }

    /// Spanning graph on the host's vertex set; dead vertices are isolated.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn alive(&self) -> VertexSet {
        self.alive
    }

    pub fn n_i(&self) -> usize {
        self.alive.count_ones() as usize
    }

    /// The alive part, relabelled `0..n_i` in increasing order.
    pub fn induced(&self) -> Graph {
        self.graph.induced(self.alive)
    }

    fn remove(&mut self, vs: VertexSet) {
        self.alive &= !vs;
        self.graph = self.graph.restrict_to(self.alive);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Operation1Witness {
    pub vertex: usize,
    /// Product of the list sizes on the vertex's current edges.
    #[serde(serialize_with = "serde_dec::count")]
    pub list_product: Count,
    /// `(2 - ξ²)(n_i - 1) / 3`; the guard is `list_product <= r^exponent`.
    #[serde(serialize_with = "serde_dec::rational")]
    pub exponent: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Operation2Witness {
    pub triangle: [usize; 3],
    /// Edge list sizes, largest first.
    pub list_sizes: [u32; 3],
    pub joint_neighbors: usize,
    /// Rainbow copies through the triangle inside the current graph.
    #[serde(serialize_with = "serde_dec::count")]
    pub rainbow_copies: Count,
}

fn op1_exponent(cfg: &CleaningConfig, n_i: usize) -> BigRational {
    (rational_from(2u32) - cfg.xi_sq()) * rational_from(n_i as u64 - 1) / rational_from(3u32)
}

fn op1_guard(state: &CleaningState, t: &Template, cfg: &CleaningConfig, v: usize) -> Result<Option<Operation1Witness>> {
    let mut product = SmoothProduct::default();
    for u in vertices_of(state.graph.neighbors(v)) {
        let id = t.host().edge_id(u, v).expect("spanning subgraph");
        product.push(t.list_size(id) as u64);
    }
    let exponent = op1_exponent(cfg, state.n_i());
    let holds = if exponent.is_zero() {
        product.value() <= BigUint::one()
    } else {
        let one = BigRational::one();
        compare_powers(&product, &one, &SmoothProduct::of(cfg.r as u64), &exponent)? != Ordering::Greater
    };
    Ok(holds.then(|| Operation1Witness {
        vertex: v,
        list_product: product.value(),
        exponent,
    }))
}

/// Least alive vertex `v` with `Π_{u ∈ N(v)} |L(uv)| <= r^((2-ξ²)(n_i-1)/3)`.
pub fn operation1_step(state: &CleaningState, t: &Template, cfg: &CleaningConfig) -> Result<Option<Operation1Witness>> {
    check_compatible(t, cfg)?;
    let alive: Vec<usize> = vertices_of(state.alive).collect();
    alive
        .par_iter()
        .find_map_first(|&v| op1_guard(state, t, cfg, v).transpose())
        .transpose()
}

/// Default criticality: at least `n^(5/6)` rainbow copies, as `c^6 >= n^5`.
pub fn is_critical_count(copies: &Count, n: usize) -> bool {
    pow_le(&BigUint::from(n), 5, copies, 6)
}

fn sorted_list_sizes(t: &Template, [a, b, c]: [usize; 3]) -> [u32; 3] {
    let size = |u, v| t.list_size(t.host().edge_id(u, v).expect("spanning subgraph"));
    let mut s = [size(a, b), size(b, c), size(a, c)];
    s.sort_unstable_by(|x, y| y.cmp(x));
    s
}

fn op2_guard(
    state: &CleaningState,
    t: &Template,
    cfg: &CleaningConfig,
    tri: [usize; 3],
    critical: &(dyn Fn([usize; 3], &Count) -> bool + Sync),
) -> Result<Option<Operation2Witness>> {
    let sizes = sorted_list_sizes(t, tri);
    if sizes[0] != cfg.r || sizes[1] < 3 || sizes[2] < 2 {
        return Ok(None);
    }
    let g = &state.graph;
    let joint = (g.neighbors(tri[0]) & g.neighbors(tri[1]) & g.neighbors(tri[2])).count_ones() as usize;
    let need = rational_from(19u32) * cfg.xi_sq() * rational_from(state.n_i() as u64 - 3);
    if rational_from(joint as u64) < need {
        return Ok(None);
    }
    let copies = t.count_rainbow_copies_through_triangle(tri, g, cfg.reading)?;
    if critical(tri, &copies) {
        return Ok(None);
    }
    Ok(Some(Operation2Witness {
        triangle: tri,
        list_sizes: sizes,
        joint_neighbors: joint,
        rainbow_copies: copies,
    }))
}

/// First triangle, in lexicographic order, that is non-critical, has lists
/// of sizes `r >= s_2 >= 3`, `s_3 >= 2`, and at least `19 ξ² (n_i - 3)`
/// joint neighbors.
pub fn operation2_step(state: &CleaningState, t: &Template, cfg: &CleaningConfig) -> Result<Option<Operation2Witness>> {
    let n = cfg.n;
    operation2_step_with(state, t, cfg, &|_, c| is_critical_count(c, n))
}

/// As [`operation2_step`] with a caller-supplied criticality test.
pub fn operation2_step_with(
    state: &CleaningState,
    t: &Template,
    cfg: &CleaningConfig,
    critical: &(dyn Fn([usize; 3], &Count) -> bool + Sync),
) -> Result<Option<Operation2Witness>> {
    check_compatible(t, cfg)?;
    state
        .graph
        .triangles()
        .par_iter()
        .find_map_first(|&tri| op2_guard(state, t, cfg, tri, critical).transpose())
        .transpose()
}

fn check_compatible(t: &Template, cfg: &CleaningConfig) -> Result<()> {
    if t.r() != cfg.r {
        return Err(Error::IncompatibleTemplates(format!("template has r = {}, config has r = {}", t.r(), cfg.r)));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepWitness {
    ListProduct(Operation1Witness),
    Triangle(Operation2Witness),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CleaningStep {
    pub operation: u8,
    pub removed: Vec<usize>,
    pub n_before: usize,
    pub n_after: usize,
    pub witness: StepWitness,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    /// `n_p <= ξ² n`
    BelowFloor,
    NoOperation,
}

#[derive(Clone, Debug, Serialize)]
pub struct CleaningTrace {
    pub config: CleaningConfig,
    pub initial_edges: usize,
    pub steps: Vec<CleaningStep>,
    pub stop: StopReason,
    pub n_p: usize,
    /// Surviving vertices; `final_graph6` is the graph they induce, relabelled
    /// in this order.
    pub final_vertices: Vec<usize>,
    pub final_graph6: String,
    #[serde(skip)]
    pub final_state: CleaningState,
}

fn next_step(state: &CleaningState, t: &Template, cfg: &CleaningConfig) -> Result<Option<CleaningStep>> {
    let n_before = state.n_i();
    let one = |s: &CleaningState| -> Result<Option<CleaningStep>> {
        Ok(operation1_step(s, t, cfg)?.map(|w| CleaningStep {
            operation: 1,
            removed: vec![w.vertex],
            n_before,
            n_after: n_before - 1,
            witness: StepWitness::ListProduct(w),
        }))
    };
    let two = |s: &CleaningState| -> Result<Option<CleaningStep>> {
        Ok(operation2_step(s, t, cfg)?.map(|w| CleaningStep {
            operation: 2,
            removed: w.triangle.to_vec(),
            n_before,
            n_after: n_before - 3,
            witness: StepWitness::Triangle(w),
        }))
    };
    match cfg.order {
        OperationOrder::OneFirst => match one(state)? {
            Some(s) => Ok(Some(s)),
            None => two(state),
        },
        OperationOrder::TwoFirst => match two(state)? {
            Some(s) => Ok(Some(s)),
            None => one(state),
        },
    }
}

/// Applies the operations in the configured order until the state drops to
/// `ξ² n` vertices or neither operation applies.
pub fn clean(t: &Template, cfg: &CleaningConfig) -> Result<CleaningTrace> {
    check_compatible(t, cfg)?;
    let mut state = CleaningState::initial(t);
    let initial_edges = state.graph.edge_count();
    let mut steps = Vec::new();
    let stop = loop {
        if cfg.below_floor(state.n_i()) {
            break StopReason::BelowFloor;
        }
        match next_step(&state, t, cfg)? {
            Some(step) => {
                state.remove(step.removed.iter().fold(0, |m, &v| m | bit(v)));
                steps.push(step);
            }
            None => break StopReason::NoOperation,
        }
    };
    Ok(CleaningTrace {
        config: cfg.clone(),
        initial_edges,
        steps,
        stop,
        n_p: state.n_i(),
        final_vertices: vertices_of(state.alive).collect(),
        final_graph6: state.induced().graph6(),
        final_state: state,
    })
}

/// Re-executes a trace against `t`: every recorded step must be the one the
/// guards select at that point, with an identical witness, and the recorded
/// stop reason must hold at the end.
pub fn replay(t: &Template, trace: &CleaningTrace) -> Result<()> {
    let cfg = &trace.config;
    check_compatible(t, cfg)?;
    let mut state = CleaningState::initial(t);
    if state.graph.edge_count() != trace.initial_edges {
        return Err(Error::InvalidArgument("initial graph differs".into()));
    }
    for (i, step) in trace.steps.iter().enumerate() {
        if cfg.below_floor(state.n_i()) {
            return Err(Error::InvalidArgument(format!("step {i} recorded below the floor")));
        }
        if !witness_holds(&state, t, cfg, step)? {
            return Err(Error::InvalidArgument(format!("step {i}: witness fails its guard")));
        }
        if next_step(&state, t, cfg)?.as_ref() != Some(step) {
            return Err(Error::InvalidArgument(format!("step {i} is not the first applicable operation")));
        }
        state.remove(step.removed.iter().fold(0, |m, &v| m | bit(v)));
    }
    let stop_ok = match trace.stop {
        StopReason::BelowFloor => cfg.below_floor(state.n_i()),
        StopReason::NoOperation => !cfg.below_floor(state.n_i()) && next_step(&state, t, cfg)?.is_none(),
    };
    if !stop_ok || state.n_i() != trace.n_p {
        return Err(Error::InvalidArgument("final state or stop reason differs".into()));
    }
    Ok(())
}

/// Rechecks one step's guard from its witness alone.
pub fn witness_holds(state: &CleaningState, t: &Template, cfg: &CleaningConfig, step: &CleaningStep) -> Result<bool> {
    let n_i = state.n_i();
    let ok = match &step.witness {
        StepWitness::ListProduct(w) => {
            step.operation == 1
                && step.removed == [w.vertex]
                && state.alive & bit(w.vertex) != 0
                && op1_guard(state, t, cfg, w.vertex)?.as_ref() == Some(w)
        }
        StepWitness::Triangle(w) => {
            let n = cfg.n;
            step.operation == 2
                && step.removed == w.triangle
                && op2_guard(state, t, cfg, w.triangle, &|_, c| is_critical_count(c, n))?.as_ref() == Some(w)
        }
    };
    Ok(ok && step.n_before == n_i && step.n_after + step.removed.len() == n_i)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalSets {
    pub n: usize,
    pub n_p: usize,
    /// `X_3`: triangles in at least `n^(5/6)` rainbow copies.
    pub triangles: Vec<[usize; 3]>,
    /// `X_2`: edges in at least `n_p^(11/12)` critical triangles.
    pub edges: Vec<(usize, usize)>,
    /// `X_1`: vertices in at least `n_p^(23/12)` critical triangles.
    pub vertices: Vec<usize>,
}

/// Critical sets of the current state; `n` is the original vertex count.
pub fn critical_sets(state: &CleaningState, t: &Template, n: usize, reading: CopyReading) -> Result<CriticalSets> {
    let g = &state.graph;
    let flags: Vec<Result<bool>> = g
        .triangles()
        .par_iter()
        .map(|&tri| Ok(is_critical_count(&t.count_rainbow_copies_through_triangle(tri, g, reading)?, n)))
        .collect();
    let mut triangles = Vec::new();
    for (tri, flag) in g.triangles().into_iter().zip(flags) {
        if flag? {
            triangles.push(tri);
        }
    }
    let n_p = BigUint::from(state.n_i());
    let mut per_edge = vec![0u64; g.edge_count()];
    let mut per_vertex = vec![0u64; g.n()];
    for &[a, b, c] in &triangles {
        for (u, v) in [(a, b), (b, c), (a, c)] {
            per_edge[g.edge_id(u, v).expect("triangle edge")] += 1;
        }
        for v in [a, b, c] {
            per_vertex[v] += 1;
        }
    }
    let edges = g
        .edges()
        .iter()
        .zip(&per_edge)
        .filter(|(_, &c)| pow_le(&n_p, 11, &BigUint::from(c), 12))
        .map(|(&e, _)| e)
        .collect();
    let vertices = vertices_of(state.alive)
        .filter(|&v| pow_le(&n_p, 23, &BigUint::from(per_vertex[v]), 12))
        .collect();
    Ok(CriticalSets {
        n,
        n_p: state.n_i(),
        triangles,
        edges,
        vertices,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ListHistogram {
    /// `counts[i]` edges have lists of size `i`, for `0 <= i <= r`.
    pub counts: Vec<u64>,
    /// `m_2 + m_3 + m_4 + m_5`
    pub m: u64,
}

pub fn list_histogram(t: &Template) -> ListHistogram {
    let counts = t.list_size_histogram();
    let m = counts.iter().take(6).skip(2).sum();
    ListHistogram { counts, m }
}

#[cfg(test)]
mod tests;
