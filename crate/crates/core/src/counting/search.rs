//! Maximum of `ρ_{r,k}` over graphs on `n` vertices, one graph per
//! isomorphism class.

use super::engine::{ConstraintIndex, EngineOptions};
use super::{check_params, count_colorings_with};
use crate::error::{Error, Result};
use crate::exact::{serde_dec, stirling2_row, Count};
use crate::graph::{enumerate_graphs, extremal_number, turan_graph, write_graph6, Graph};
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;
use std::cmp::Ordering;

/// Upper bound on enumerated partitions summed over all graphs.
pub const DEFAULT_WORK_BUDGET: u64 = 20_000_000_000;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub work_budget: u64,
    pub engine: EngineOptions,
    pub keep_table: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            work_budget: DEFAULT_WORK_BUDGET,
            engine: EngineOptions::default(),
            keep_table: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchEntry {
    pub graph6: String,
    pub edges: usize,
    #[serde(serialize_with = "serde_dec::count")]
    pub count: Count,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub n: usize,
    pub r: u32,
    pub k: usize,
    /// Always "isomorphism-classes": each class is counted once.
    pub domain: &'static str,
    pub classes: usize,
    pub best_graph6: String,
    #[serde(serialize_with = "serde_dec::count")]
    pub best_count: Count,
    pub turan_graph6: String,
    #[serde(serialize_with = "serde_dec::count")]
    pub turan_edges: Count,
    /// `r^ex(n, K_k)`
    #[serde(serialize_with = "serde_dec::count")]
    pub turan_count: Count,
    /// How the maximum compares with `r^ex(n, K_k)`: "greater", "equal" or "less".
    pub best_vs_turan: &'static str,
    /// Ties broken by the lexicographically least graph6 code.
    pub tie_break: &'static str,
    pub table: Vec<SearchEntry>,
}

/// Partitions the engine would visit for `g`, at most.
fn work_estimate(g: &Graph, r: u32, k: usize) -> BigUint {
    if (r as usize) < k * (k - 1) / 2 || g.count_cliques(k) == 0 {
        return BigUint::from(1u32);
    }
    let idx = ConstraintIndex::new(g, k);
    let row = stirling2_row(idx.constrained());
    row.into_iter().take(r as usize + 1).sum()
}

/// Exact maximum over the supplied classes, or over [`enumerate_graphs`] when
/// `input` is `None`.
pub fn rho_max_search(n: usize, r: u32, k: usize, input: Option<&[Graph]>, opts: &SearchOptions) -> Result<SearchReport> {
    check_params(r, k)?;
    let owned;
    let graphs: &[Graph] = match input {
        Some(gs) => gs,
        None => {
            owned = enumerate_graphs(n)?.collect::<Vec<_>>();
            &owned
        }
    };
    if graphs.is_empty() {
        return Err(Error::InvalidArgument("no graphs to search".into()));
    }
    if let Some(g) = graphs.iter().find(|g| g.n() != n) {
        return Err(Error::InvalidArgument(format!(
            "input graph {} has {} vertices, expected {n}",
            g.graph6(),
            g.n()
        )));
    }
    let estimate: BigUint = graphs.iter().map(|g| work_estimate(g, r, k)).sum();
    if estimate > BigUint::from(opts.work_budget) {
        return Err(Error::cap("extremal search work", estimate, opts.work_budget));
    }

    let counts: Vec<Result<Count>> = graphs
        .par_iter()
        .map(|g| count_colorings_with(g, r, k, &opts.engine))
        .collect();
    let mut table = Vec::with_capacity(graphs.len());
    for (g, c) in graphs.iter().zip(counts) {
        table.push(SearchEntry {
            graph6: write_graph6(g),
            edges: g.edge_count(),
            count: c?,
        });
    }
    let best = table
        .iter()
        .min_by(|a, b| match b.count.cmp(&a.count) {
            Ordering::Equal => a.graph6.cmp(&b.graph6),
            other => other,
        })
        .expect("non-empty table")
        .clone();

    let ex = extremal_number(n as u64, k as u64)?;
    let turan_count = BigUint::from(r).pow(u32::try_from(&ex).expect("edge count fits u32"));
    let best_vs_turan = match best.count.cmp(&turan_count) {
        Ordering::Greater => "greater",
        Ordering::Equal => "equal",
        Ordering::Less => "less",
    };
    Ok(SearchReport {
        n,
        r,
        k,
        domain: "isomorphism-classes",
        classes: table.len(),
        best_graph6: best.graph6,
        best_count: best.count,
        turan_graph6: turan_graph(n, k - 1)?.graph6(),
        turan_edges: ex,
        turan_count,
        best_vs_turan,
        tie_break: "lexicographically least graph6 among maximizers",
        table: if opts.keep_table { table } else { Vec::new() },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_vertices_five_colors() {
        let rep = rho_max_search(4, 5, 4, None, &SearchOptions::default()).unwrap();
        assert_eq!(rep.classes, 11);
        assert_eq!(rep.best_graph6, "C~");
        assert_eq!(rep.best_count, BigUint::from(5u32).pow(6));
        assert_eq!(rep.turan_count, BigUint::from(5u32).pow(5));
        assert_eq!(rep.best_vs_turan, "greater");
    }

    #[test]
    fn four_vertices_twelve_colors() {
        let rep = rho_max_search(4, 12, 4, None, &SearchOptions::default()).unwrap();
        assert_eq!(rep.best_graph6, "C~");
        assert_eq!(rep.best_count, BigUint::from(2_320_704u32));
        assert_eq!(rep.turan_count, BigUint::from(248_832u32));
        let max = rep.table.iter().map(|e| e.count.clone()).max().unwrap();
        assert_eq!(max, rep.best_count);
    }

    #[test]
    fn tie_break_is_lexicographic() {
        // r = 1: every graph has exactly one coloring
        let rep = rho_max_search(4, 1, 4, None, &SearchOptions::default()).unwrap();
        let least = rep.table.iter().map(|e| e.graph6.clone()).min().unwrap();
        assert_eq!(rep.best_graph6, least);
    }

    #[test]
    fn budget_refusal() {
        let opts = SearchOptions {
            work_budget: 10,
            ..SearchOptions::default()
        };
        assert!(matches!(rho_max_search(5, 6, 4, None, &opts), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn external_input_checked() {
        let gs = vec![Graph::complete(4).unwrap(), Graph::complete(5).unwrap()];
        assert!(rho_max_search(4, 6, 4, Some(&gs), &SearchOptions::default()).is_err());
        assert!(rho_max_search(7, 6, 4, None, &SearchOptions::default()).is_err());
    }
}
