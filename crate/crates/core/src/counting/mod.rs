//! Exact counts of rainbow-`K_k`-free `r`-edge-colorings.

mod brute;
mod engine;
mod search;

pub use brute::{brute_force_count, brute_force_count_with_cap, DEFAULT_ORACLE_CAP};
pub use engine::EngineOptions;
pub use search::{rho_max_search, SearchEntry, SearchOptions, SearchReport, DEFAULT_WORK_BUDGET};

use crate::error::{Error, Result};
use crate::exact::{falling_factorial, serde_dec, Count};
use crate::graph::{write_graph6, Graph};
use crate::template::MAX_COLORS;
use engine::{add_free_elements, ConstraintIndex};
use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

pub const DEFAULT_PARTITION_CAP: usize = 15;

pub(crate) fn check_params(r: u32, k: usize) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidArgument("at least one color is required".into()));
    }
    if r > MAX_COLORS {
        return Err(Error::UnsupportedColors(r));
    }
    if k < 3 {
        return Err(Error::InvalidArgument(format!("clique order must be at least 3, got {k}")));
    }
    Ok(())
}

/// `ρ_{r,k}(G)`: colorings `E(G) → [r]` with no `K_k` whose edges all get
/// distinct colors.
pub fn count_colorings(g: &Graph, r: u32, k: usize) -> Result<Count> {
    count_colorings_with(g, r, k, &EngineOptions::default())
}

pub fn count_colorings_with(g: &Graph, r: u32, k: usize, opts: &EngineOptions) -> Result<Count> {
    check_params(r, k)?;
    let m = g.edge_count() as u32;
    let width = k * (k - 1) / 2;
    if (r as usize) < width || g.count_cliques(k) == 0 {
        return Ok(BigUint::from(r).pow(m));
    }
    let idx = ConstraintIndex::new(g, k);
    let counts = idx.block_counts(r as usize, opts);
    let constrained: BigUint = counts
        .iter()
        .enumerate()
        .map(|(j, &c)| falling_factorial(r as u64, j as u64) * c)
        .sum();
    Ok(constrained * BigUint::from(r).pow(idx.free() as u32))
}

/// `ρ_{r,k}(G)` for every `r` at once, in the falling-factorial basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionPolynomial {
    pub graph6: String,
    pub k: usize,
    /// `S_0, S_1, ..., S_m`; `S_0` is 1 for the edgeless graph and 0 otherwise.
    #[serde(serialize_with = "serde_dec::counts")]
    coeffs: Vec<Count>,
}

impl PartitionPolynomial {
    /// `S_1..S_m`.
    pub fn coefficients(&self) -> &[Count] {
        &self.coeffs[1.min(self.coeffs.len())..]
    }

    pub fn edge_count(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, r: u64) -> Count {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(j, s)| falling_factorial(r, j as u64) * s)
            .sum()
    }
}

pub fn partition_polynomial(g: &Graph, k: usize) -> Result<PartitionPolynomial> {
    partition_polynomial_with(g, k, DEFAULT_PARTITION_CAP, &EngineOptions::default())
}

pub fn partition_polynomial_with(g: &Graph, k: usize, cap: usize, opts: &EngineOptions) -> Result<PartitionPolynomial> {
    if k < 3 {
        return Err(Error::InvalidArgument(format!("clique order must be at least 3, got {k}")));
    }
    let m = g.edge_count();
    if m > cap.min(64) {
        return Err(Error::cap(
            format!("partition polynomial over {m} edges; use count_colorings for a fixed r"),
            m,
            cap.min(64),
        ));
    }
    let idx = ConstraintIndex::new(g, k);
    let constrained = idx.block_counts(idx.constrained().max(1), opts);
    let full = add_free_elements(&constrained, idx.free());
    let mut coeffs: Vec<Count> = full.into_iter().map(BigUint::from).collect();
    coeffs.resize(m + 1, BigUint::zero());
    Ok(PartitionPolynomial {
        graph6: write_graph6(g),
        k,
        coeffs,
    })
}

/// Which of the two elementary lower bounds on `ρ_{r,k}(n)` grows faster.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dominance {
    /// `(C(k,2) - 1)`-colorings of `K_n` beat the Turán graph.
    CliqueColoring,
    Turan,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsComparison {
    pub r: u32,
    pub k: u32,
    /// `(C(k,2) - 1)^(k-1)`
    #[serde(serialize_with = "serde_dec::count")]
    pub clique_side: Count,
    /// `r^(k-2)`
    #[serde(serialize_with = "serde_dec::count")]
    pub turan_side: Count,
    pub verdict: Dominance,
}

/// Compares `C(k,2) - 1` with `r^(1 - 1/(k-1))` after raising both to the
/// power `k - 1`.
pub fn bounds_compare(r: u32, k: u32) -> Result<BoundsComparison> {
    if r == 0 || k < 3 {
        return Err(Error::InvalidArgument(format!("need r >= 1 and k >= 3, got r = {r}, k = {k}")));
    }
    let clique_colors = BigUint::from(k * (k - 1) / 2 - 1);
    let clique_side = clique_colors.pow(k - 1);
    let turan_side = BigUint::from(r).pow(k - 2);
    let verdict = if clique_side > turan_side {
        Dominance::CliqueColoring
    } else {
        Dominance::Turan
    };
    Ok(BoundsComparison {
        r,
        k,
        clique_side,
        turan_side,
        verdict,
    })
}
