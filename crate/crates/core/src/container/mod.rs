//! The rainbow hypergraph of a template: vertices are `(edge, color)` pairs,
//! hyperedges are rainbow copies of `K_4`. Degrees, co-degrees and the
//! weighted co-degree function are exact; the hypothesis calculator for
//! complete templates on `K_n` works at any `n` through closed forms.

mod hypergraph;
mod threshold;

pub use hypergraph::{Block, MaterializedHypergraph};
pub use threshold::{container_hypothesis_check, min_n_for_container, ContainerCheck, ContainerConstants};

use crate::error::{Error, Result};
use crate::exact::{binomial_big, falling_factorial, ratio, rational_pow, serde_dec, Count, RadicalSum};
use crate::graph::{bit, vertices_of, EdgeId, Graph, VertexSet};
use crate::template::{count_from, ColorId, ColorSet, Template};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Hyperedge size: a `K_4` has six edges.
pub const UNIFORMITY: usize = 6;
pub const DEFAULT_MATERIALIZATION_CAP: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RainbowHypergraphStats {
    #[serde(serialize_with = "serde_dec::count")]
    pub vertex_count: Count,
    #[serde(serialize_with = "serde_dec::count")]
    pub edge_count: Count,
    /// `6 e(H) / N`; absent when `N = 0`.
    #[serde(serialize_with = "serde_dec::opt_rational")]
    pub average_degree: Option<BigRational>,
    /// `Δ_2 ..= Δ_6`; absent when only counting was affordable.
    #[serde(serialize_with = "serde_dec::opt_counts")]
    pub max_codegrees: Option<Vec<Count>>,
}

impl RainbowHypergraphStats {
    fn new(vertex_count: Count, edge_count: Count, max_codegrees: Option<Vec<Count>>) -> Self {
        let average_degree = (!vertex_count.is_zero())
            .then(|| ratio(edge_count.clone() * UNIFORMITY as u32, vertex_count.clone()));
        RainbowHypergraphStats {
            vertex_count,
            edge_count,
            average_degree,
            max_codegrees,
        }
    }

    /// `Δ_j` for `2 <= j <= 6`.
    pub fn max_codegree(&self, j: usize) -> Option<&Count> {
        self.max_codegrees.as_ref()?.get(j.checked_sub(2)?)
    }
}

/// `Δ_2 ..= Δ_6` of a complete template whose host has a `K_4` and whose
/// triangles extend to at most `ext` distinct `K_4`s.
fn complete_codegrees(ext: &BigUint, r: u32) -> Vec<Count> {
    (2..=6u64)
        .map(|j| {
            let f = falling_factorial(r as u64 - j, 6 - j);
            if j <= 3 {
                f * ext
            } else {
                f
            }
        })
        .collect()
}

/// Stats of the complete template on `host`, from clique counts only.
pub fn complete_template_stats(host: &Graph, r: u32) -> RainbowHypergraphStats {
    let quads = host.count_cliques(4);
    let n_vertices = BigUint::from(host.edge_count() as u64 * r as u64);
    if quads == 0 || r < 6 {
        return RainbowHypergraphStats::new(n_vertices, BigUint::zero(), Some(vec![BigUint::zero(); 5]));
    }
    let ext = host
        .triangles()
        .into_iter()
        .map(|[a, b, c]| (host.neighbors(a) & host.neighbors(b) & host.neighbors(c)).count_ones())
        .max()
        .unwrap_or(0);
    let edges = falling_factorial(r as u64, 6) * quads;
    RainbowHypergraphStats::new(n_vertices, edges, Some(complete_codegrees(&BigUint::from(ext), r)))
}

/// Stats of the complete `r`-template on `K_n`, for any `n`.
pub fn complete_graph_stats(n: &BigUint, r: u32) -> RainbowHypergraphStats {
    let n_vertices = binomial_big(n, 2) * r;
    if *n < BigUint::from(4u32) || r < 6 {
        return RainbowHypergraphStats::new(n_vertices, BigUint::zero(), Some(vec![BigUint::zero(); 5]));
    }
    let edges = falling_factorial(r as u64, 6) * binomial_big(n, 4);
    RainbowHypergraphStats::new(n_vertices, edges, Some(complete_codegrees(&(n - 3u32), r)))
}

/// Co-degree in the complete `r`-template on `K_n` of a set of
/// `(edge, color)` pairs, edges given by endpoints.
///
/// Repeated edges or colors give 0. Otherwise only the vertex span `s` of
/// the edges matters: pairs on a path or a star, a triangle, two disjoint or
/// two incident edges all reduce to `C(n - s, 4 - s) (r - j)_(6 - j)`, and
/// `s > 4` gives 0.
pub fn complete_codegree(n: &BigUint, r: u32, set: &[([u64; 2], ColorId)]) -> Result<Count> {
    let mut pairs: Vec<([u64; 2], ColorId)> = Vec::with_capacity(set.len());
    for &([u, v], c) in set {
        if u == v || BigUint::from(u.max(v)) >= *n {
            return Err(Error::InvalidArgument(format!("{{{u}, {v}}} is not an edge of K_{n}")));
        }
        if c as u32 >= r {
            return Err(Error::InvalidColor {
                edge: 0,
                color: c as u32,
                r,
            });
        }
        pairs.push(([u.min(v), u.max(v)], c));
    }
    pairs.sort_unstable();
    pairs.dedup();
    let j = pairs.len() as u64;
    let mut span: Vec<u64> = pairs.iter().flat_map(|(e, _)| *e).collect();
    span.sort_unstable();
    span.dedup();
    let edges_distinct = pairs.windows(2).all(|w| w[0].0 != w[1].0);
    let mut colors: Vec<ColorId> = pairs.iter().map(|p| p.1).collect();
    colors.sort_unstable();
    let colors_distinct = colors.windows(2).all(|w| w[0] != w[1]);
    let s = span.len() as u64;
    if !edges_distinct || !colors_distinct || s > 4 || j > 6 || r < 6 {
        return Ok(BigUint::zero());
    }
    let quads = if *n < BigUint::from(s) {
        BigUint::zero()
    } else {
        binomial_big(&(n - s), 4 - s)
    };
    Ok(quads * falling_factorial(r as u64 - j, 6 - j))
}

/// Number of rainbow copies containing every pair of `set`.
pub fn codegree(t: &Template, set: &[(EdgeId, ColorId)]) -> Result<Count> {
    let host = t.host();
    let mut pairs = set.to_vec();
    for &(e, c) in &pairs {
        if e >= host.edge_count() {
            return Err(Error::InvalidArgument(format!("edge id {e} out of range")));
        }
        if c as u32 >= t.r() {
            return Err(Error::InvalidColor {
                edge: e,
                color: c as u32,
                r: t.r(),
            });
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    let mut used: ColorSet = 0;
    let mut span: VertexSet = 0;
    for (i, &(e, c)) in pairs.iter().enumerate() {
        if i > 0 && pairs[i - 1].0 == e {
            return Ok(BigUint::zero());
        }
        if used & bit(c as usize) != 0 || t.list(e) & bit(c as usize) == 0 {
            return Ok(BigUint::zero());
        }
        used |= bit(c as usize);
        let (u, v) = host.edge(e);
        span |= bit(u) | bit(v);
    }
    if span.count_ones() > 4 {
        return Ok(BigUint::zero());
    }
    let mut total = 0u128;
    for quad in quads_containing(host, span) {
        let (ids, lists) = t.quad_lists(quad);
        let mut rest: Vec<ColorSet> = ids
            .iter()
            .zip(lists)
            .filter(|(e, _)| pairs.binary_search_by_key(e, |p| &p.0).is_err())
            .map(|(_, l)| l)
            .collect();
        rest.sort_by_key(|l| l.count_ones());
        total += count_from(&rest, used) as u128;
    }
    Ok(BigUint::from(total))
}

fn quads_containing(host: &Graph, span: VertexSet) -> Vec<VertexSet> {
    fn grow(host: &Graph, cur: VertexSet, cand: VertexSet, out: &mut Vec<VertexSet>) {
        if cur.count_ones() == 4 {
            out.push(cur);
            return;
        }
        for v in vertices_of(cand) {
            // only larger candidates next, so each set is produced once
            let later = cand & !((bit(v) << 1) - 1);
            grow(host, cur | bit(v), later & host.neighbors(v), out);
        }
    }
    let clique = vertices_of(span).all(|u| span & !bit(u) & !host.neighbors(u) == 0);
    let mut out = Vec::new();
    if !clique {
        return out;
    }
    let cand = vertices_of(span).fold(crate::graph::full_mask(host.n()) & !span, |m, u| m & host.neighbors(u));
    grow(host, span, cand, &mut out);
    out
}

/// `Δ_j`: structural for complete templates, by materialization otherwise.
pub fn max_codegree(t: &Template, j: usize, cap: u64) -> Result<Count> {
    if !(2..=UNIFORMITY).contains(&j) {
        return Err(Error::InvalidArgument(format!("co-degree order {j} outside 2..=6")));
    }
    if t.is_complete() {
        return Ok(complete_template_stats(t.host(), t.r()).max_codegree(j).unwrap().clone());
    }
    let edges = t.count_rainbow_copies();
    if edges > BigUint::from(cap) {
        return Err(Error::cap("rainbow hypergraph edges", edges, cap));
    }
    Ok(BigUint::from(MaterializedHypergraph::build(t).max_codegree(j)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    /// Keep the explicit hyperedges.
    pub materialize: bool,
    /// Over the cap, return counts without co-degrees instead of failing.
    pub stats_only: bool,
    pub cap: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            materialize: false,
            stats_only: false,
            cap: DEFAULT_MATERIALIZATION_CAP,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RainbowHypergraph {
    pub stats: RainbowHypergraphStats,
    pub hypergraph: Option<MaterializedHypergraph>,
}

pub fn build_rainbow_hypergraph(t: &Template, opts: &BuildOptions) -> Result<RainbowHypergraph> {
    let complete = t.is_complete();
    let edges = t.count_rainbow_copies();
    let n_vertices = BigUint::from(t.host().edge_count() as u64 * t.r() as u64);
    let needs_edges = opts.materialize || !complete;
    let hypergraph = if needs_edges && edges <= BigUint::from(opts.cap) {
        Some(MaterializedHypergraph::build(t))
    } else if needs_edges && !opts.stats_only {
        return Err(Error::cap("rainbow hypergraph edges", edges, opts.cap));
    } else {
        None
    };
    let codegrees = if complete {
        complete_template_stats(t.host(), t.r()).max_codegrees
    } else {
        hypergraph
            .as_ref()
            .map(|h| (2..=UNIFORMITY).map(|j| BigUint::from(h.max_codegree(j))).collect())
    };
    let stats = RainbowHypergraphStats::new(n_vertices, edges, codegrees);
    Ok(RainbowHypergraph {
        stats,
        hypergraph: hypergraph.filter(|_| opts.materialize),
    })
}

/// Which inner weights multiply `Δ_j / (d̄ τ^(j-1))` under the leading `2^14`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CodegreeWeights {
    /// `2^-(j-2)`: 1, 1/2, 1/4, 1/8, 1/16.
    #[default]
    Displayed,
    /// `2^-C(j-1, 2)`: 1, 1/2, 1/8, 1/64, 1/1024.
    Definition,
}

impl CodegreeWeights {
    fn halvings(self, j: u32) -> u32 {
        match self {
            CodegreeWeights::Displayed => j - 2,
            CodegreeWeights::Definition => (j - 1) * (j - 2) / 2,
        }
    }
}

const LEADING_POWER: u32 = 14;

/// Coefficients `a_j` with `Δ(H, τ) = Σ_j a_j τ^-(j-1)`.
fn delta_coefficients(stats: &RainbowHypergraphStats, weights: CodegreeWeights) -> Result<Vec<BigRational>> {
    let dbar = match &stats.average_degree {
        Some(d) if !d.is_zero() => d,
        _ => return Err(Error::UndefinedAverageDegree),
    };
    let codegrees = stats
        .max_codegrees
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("co-degrees were not computed".into()))?;
    Ok(codegrees
        .iter()
        .zip(2u32..)
        .map(|(d, j)| {
            ratio(d.clone() << LEADING_POWER, BigUint::one() << weights.halvings(j)) / dbar
        })
        .collect())
}

/// `Δ(H, τ)` for rational `τ`.
pub fn delta_tau(stats: &RainbowHypergraphStats, tau: &BigRational, weights: CodegreeWeights) -> Result<BigRational> {
    if !tau.is_positive() {
        return Err(Error::InvalidArgument("τ must be positive".into()));
    }
    let mut total = BigRational::zero();
    for (i, a) in delta_coefficients(stats, weights)?.into_iter().enumerate() {
        total += a / rational_pow(tau, i as u32 + 1);
    }
    Ok(total)
}

/// `Δ(H, τ) / σ` as a sum of sixth roots, given `τ^6` and `σ^6`.
pub fn delta_tau_radical(
    stats: &RainbowHypergraphStats,
    tau_sixth: &BigRational,
    scale_sixth: &BigRational,
    weights: CodegreeWeights,
) -> Result<RadicalSum> {
    if !tau_sixth.is_positive() || !scale_sixth.is_positive() {
        return Err(Error::InvalidArgument("τ and the scale must be positive".into()));
    }
    let sixth_powers = delta_coefficients(stats, weights)?
        .into_iter()
        .enumerate()
        .map(|(i, a)| rational_pow(&a, 6) / rational_pow(tau_sixth, i as u32 + 1) / scale_sixth)
        .collect();
    Ok(RadicalSum { sixth_powers })
}
