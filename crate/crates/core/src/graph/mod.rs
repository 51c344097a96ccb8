//! Dense simple graphs on at most 64 vertices.
//!
//! Every vertex owns one `u64` adjacency row. Edges carry a fixed identifier,
//! [`EdgeId`], which is the position of the pair `(u, v)`, `u < v`, in the
//! lexicographically sorted edge list. Templates, colorings and hypergraph
//! vertices all address edges through this identifier.

mod closeness;
mod enumerate;
mod graph6;

pub use closeness::{closeness_to_kpartite, closeness_to_kpartite_with_cap, Closeness, DEFAULT_EXACT_CAP};
pub use enumerate::{enumerate_graphs, GraphStream, MAX_ENUMERATION_ORDER};
pub use graph6::{parse_graph6, parse_graph6_stream, write_graph6};

use crate::error::{Error, Result};
use crate::exact::Count;
use num_bigint::BigUint;

pub const MAX_VERTICES: usize = 64;

pub type EdgeId = usize;
pub type VertexSet = u64;

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of a mask in increasing order.
pub fn vertices_of(mut mask: VertexSet) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn edgeless(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(Graph {
            n,
            adj: vec![0; n],
            edges: Vec::new(),
        })
    }

    pub fn complete(n: usize) -> Result<Self> {
        check_order(n)?;
        let mask = full_mask(n);
        Ok(Self::from_rows(n, (0..n).map(|v| mask & !bit(v)).collect()))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("cycle needs 3 vertices, got {n}")));
        }
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// Path with `n` vertices (so `n - 1` edges).
    pub fn path(n: usize) -> Result<Self> {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        check_order(n)?;
        let mut adj = vec![0u64; n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {u}")));
            }
            adj[u] |= bit(v);
            adj[v] |= bit(u);
        }
        Ok(Self::from_rows(n, adj))
    }

    /// Builds from adjacency rows, rejecting loops, asymmetry and stray bits.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self> {
        let n = adj.len();
        check_order(n)?;
        let mask = full_mask(n);
        for (v, &row) in adj.iter().enumerate() {
            if row & !mask != 0 {
                return Err(Error::InvalidArgument(format!("row {v} has bits beyond vertex {n}")));
            }
            if row & bit(v) != 0 {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {v}")));
            }
            for u in vertices_of(row) {
                if adj[u] & bit(v) == 0 {
                    return Err(Error::InvalidArgument(format!("asymmetric pair ({v}, {u})")));
                }
            }
        }
        Ok(Self::from_rows(n, adj))
    }

    fn from_rows(n: usize, adj: Vec<u64>) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in vertices_of(adj[u] & !full_mask(u + 1)) {
                edges.push((u, v));
            }
        }
        Graph { n, adj, edges }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in `EdgeId` order.
    #[inline]
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, id: EdgeId) -> (usize, usize) {
        self.edges[id]
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn vertex_mask(&self) -> VertexSet {
        full_mask(self.n)
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<EdgeId> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&key).ok()
    }

    /// Spanning subgraph keeping the edges for which `keep` holds.
    pub fn spanning_subgraph(&self, mut keep: impl FnMut(EdgeId) -> bool) -> Graph {
        let kept: Vec<_> = (0..self.edge_count()).filter(|&e| keep(e)).map(|e| self.edges[e]).collect();
        Self::from_edges(self.n, kept).expect("subgraph of a valid graph")
    }

    /// Same vertex set, with every vertex outside `alive` made isolated.
    pub fn restrict_to(&self, alive: VertexSet) -> Graph {
        let adj = (0..self.n)
            .map(|v| if alive & bit(v) != 0 { self.adj[v] & alive } else { 0 })
            .collect();
        Self::from_rows(self.n, adj)
    }

    /// Induced subgraph on `keep`, relabelled to `0..|keep|` in vertex order.
    pub fn induced(&self, keep: VertexSet) -> Graph {
        let keep = keep & self.vertex_mask();
        let order: Vec<usize> = vertices_of(keep).collect();
        let mut adj = vec![0u64; order.len()];
        for (i, &u) in order.iter().enumerate() {
            for (j, &v) in order.iter().enumerate() {
                if self.has_edge(u, v) {
                    adj[i] |= bit(j);
                }
            }
        }
        Self::from_rows(order.len(), adj)
    }

    /// True when every edge of `self` is an edge of `other` on the same vertex count.
    pub fn is_spanning_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.adj.iter().zip(&other.adj).all(|(a, b)| a & !b == 0)
    }

    /// Triangles `[u, v, w]`, `u < v < w`, in lexicographic order.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        self.enumerate_cliques(3)
            .members
            .into_iter()
            .map(|m| {
                let mut it = vertices_of(m);
                [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()]
            })
            .collect()
    }

    /// Number of `k`-vertex subsets inducing `K_k`. `k = 0` counts the empty set.
    pub fn count_cliques(&self, k: usize) -> u64 {
        if k == 0 {
            return 1;
        }
        if k > self.n {
            return 0;
        }
        let mut total = 0;
        self.clique_walk(self.vertex_mask(), 0, k, &mut |_| total += 1);
        total
    }

    /// All `k`-cliques as vertex masks, in lexicographic order of their sorted
    /// vertex lists.
    pub fn enumerate_cliques(&self, k: usize) -> CliqueSet {
        let mut members = Vec::new();
        if k == 0 {
            members.push(0);
        } else if k <= self.n {
            self.clique_walk(self.vertex_mask(), 0, k, &mut |m| members.push(m));
        }
        CliqueSet { k, members }
    }

    fn clique_walk(&self, cand: u64, chosen: u64, remaining: usize, emit: &mut impl FnMut(u64)) {
        if remaining == 0 {
            emit(chosen);
            return;
        }
        if (cand.count_ones() as usize) < remaining {
            return;
        }
        for v in vertices_of(cand) {
            let later = cand & !full_mask(v + 1);
            self.clique_walk(later & self.adj[v], chosen | bit(v), remaining - 1, emit);
        }
    }

    /// Edge ids of the clique on `mask`, in `EdgeId` order.
    pub fn clique_edges(&self, mask: VertexSet) -> Vec<EdgeId> {
        let vs: Vec<usize> = vertices_of(mask).collect();
        let mut out = Vec::with_capacity(vs.len() * vs.len().saturating_sub(1) / 2);
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                out.push(self.edge_id(u, v).expect("mask is a clique"));
            }
        }
        out
    }

    pub fn graph6(&self) -> String {
        write_graph6(self)
    }
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::UnsupportedSize(format!("{n} vertices exceeds the cap of {MAX_VERTICES}")))
    } else {
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueSet {
    pub k: usize,
    pub members: Vec<VertexSet>,
}

impl CliqueSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Vertex to class assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    classes: Vec<usize>,
    k: usize,
}

impl Partition {
    pub fn new(classes: Vec<usize>, k: usize) -> Result<Self> {
        if let Some(&c) = classes.iter().find(|&&c| c >= k) {
            return Err(Error::InvalidArgument(format!("class index {c} not below {k}")));
        }
        Ok(Partition { classes, k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.classes[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.classes
    }

    pub fn class_mask(&self, c: usize) -> VertexSet {
        self.classes
            .iter()
            .enumerate()
            .filter(|(_, &cv)| cv == c)
            .fold(0, |m, (v, _)| m | bit(v))
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &c in &self.classes {
            sizes[c] += 1;
        }
        sizes
    }

    /// Number of edges of `g` with both ends in one class.
    pub fn internal_edges(&self, g: &Graph) -> u64 {
        g.edges()
            .iter()
            .filter(|&&(u, v)| self.classes[u] == self.classes[v])
            .count() as u64
    }
}

/// Balanced contiguous partition of `0..n` into `parts` classes; the first
/// `n % parts` classes get the extra vertex.
pub fn turan_partition(n: usize, parts: usize) -> Result<Partition> {
    if parts == 0 {
        return Err(Error::InvalidArgument("Turán graph needs at least one part".into()));
    }
    let base = n / parts;
    let extra = n % parts;
    let mut classes = Vec::with_capacity(n);
    for c in 0..parts {
        let size = base + usize::from(c < extra);
        classes.extend(std::iter::repeat(c).take(size));
    }
    Partition::new(classes, parts)
}

/// Complete `parts`-partite graph on `n` vertices with balanced classes.
pub fn turan_graph(n: usize, parts: usize) -> Result<Graph> {
    check_order(n)?;
    let p = turan_partition(n, parts)?;
    let mut adj = vec![0u64; n];
    for (u, row) in adj.iter_mut().enumerate() {
        for v in 0..n {
            if p.class_of(u) != p.class_of(v) {
                *row |= bit(v);
            }
        }
    }
    Ok(Graph::from_rows(n, adj))
}

/// `ex(n, K_k)`: edge count of the Turán graph with `k - 1` classes. No vertex
/// cap applies.
pub fn extremal_number(n: u64, k: u64) -> Result<Count> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("clique order must be at least 2, got {k}")));
    }
    let parts = k - 1;
    let base = BigUint::from(n / parts);
    let extra = n % parts;
    let n_big = BigUint::from(n);
    let big_class = &base + 1u32;
    let squares = &base * &base * (parts - extra) + &big_class * &big_class * extra;
    Ok((&n_big * &n_big - squares) / 2u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn turan_examples() {
        assert_eq!(turan_graph(6, 3).unwrap().edge_count(), 12);
        assert_eq!(turan_graph(5, 3).unwrap().edge_count(), 8);
        assert_eq!(turan_graph(4, 3).unwrap().edge_count(), 5);
        assert!(turan_graph(4, 0).is_err());
        assert_eq!(turan_graph(0, 3).unwrap().edge_count(), 0);
    }

    #[test]
    fn turan_classes_balanced() {
        for n in 0..20 {
            for parts in 1..6 {
                let sizes = turan_partition(n, parts).unwrap().class_sizes();
                let max = sizes.iter().max().unwrap();
                let min = sizes.iter().min().unwrap();
                assert!(max - min <= 1);
            }
        }
    }

    #[test]
    fn extremal_examples() {
        assert_eq!(extremal_number(6, 4).unwrap(), BigUint::from(12u32));
        assert_eq!(extremal_number(4, 4).unwrap(), BigUint::from(5u32));
        assert_eq!(extremal_number(9, 4).unwrap(), BigUint::from(27u32));
        assert!(extremal_number(5, 1).is_err());
        assert_eq!(extremal_number(7, 2).unwrap(), BigUint::from(0u32));
    }

    #[test]
    fn extremal_matches_turan_and_is_clique_free() {
        for n in 0..=30 {
            for k in [3usize, 4] {
                let t = turan_graph(n, k - 1).unwrap();
                assert_eq!(extremal_number(n as u64, k as u64).unwrap(), BigUint::from(t.edge_count()));
                assert_eq!(t.count_cliques(k), 0, "T_{}({n}) contains K_{k}", k - 1);
            }
        }
    }

    #[test]
    fn clique_examples() {
        assert_eq!(Graph::complete(6).unwrap().count_cliques(4), 15);
        assert_eq!(turan_graph(6, 3).unwrap().count_cliques(4), 0);
        assert_eq!(Graph::cycle(5).unwrap().count_cliques(3), 0);
        assert_eq!(Graph::complete(3).unwrap().count_cliques(5), 0);
        assert_eq!(Graph::cycle(5).unwrap().count_cliques(1), 5);
    }

    #[test]
    fn edge_ids_are_lexicographic() {
        let g = Graph::complete(4).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(g.edge_id(3, 1), Some(4));
        assert_eq!(Graph::path(3).unwrap().edge_id(0, 2), None);
    }

    #[test]
    fn adjacency_validation() {
        assert!(Graph::from_adjacency(vec![0b10, 0b00]).is_err());
        assert!(Graph::from_adjacency(vec![0b01]).is_err());
        assert!(Graph::from_adjacency(vec![0b100]).is_err());
        assert!(Graph::edgeless(65).is_err());
        assert_eq!(Graph::from_adjacency(vec![0b10, 0b01]).unwrap().edge_count(), 1);
    }

    #[test]
    fn induced_and_restricted() {
        let g = Graph::complete(5).unwrap();
        let h = g.induced(0b10110);
        assert_eq!(h.n(), 3);
        assert_eq!(h.edge_count(), 3);
        let r = g.restrict_to(0b00111);
        assert_eq!(r.n(), 5);
        assert_eq!(r.edge_count(), 3);
        assert!(r.is_spanning_subgraph_of(&g));
    }
}
