//! Explicit rainbow hypergraph: vertices are `(edge, color)` pairs, encoded
//! as `edge * r + color`, and hyperedges are the rainbow copies of `K_4`.

use crate::graph::{vertices_of, EdgeId, VertexSet};
use crate::template::{for_each_selection, ColorId, Template};
use rayon::prelude::*;
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct Block {
    pub quad: VertexSet,
    pub edges: [EdgeId; 6],
    /// Color of each of `edges`, one row per hyperedge.
    pub colorings: Vec<[ColorId; 6]>,
}

#[derive(Clone, Debug)]
pub struct MaterializedHypergraph {
    r: u32,
    host_edges: usize,
    blocks: Vec<Block>,
}

impl MaterializedHypergraph {
    pub(crate) fn build(t: &Template) -> Self {
        let quads = t.host().enumerate_cliques(4).members;
        let mut blocks: Vec<Block> = quads
            .par_iter()
            .map(|&quad| {
                let (edges, lists) = t.quad_lists(quad);
                let mut colorings = Vec::new();
                for_each_selection(&lists, |cs| colorings.push(cs));
                Block { quad, edges, colorings }
            })
            .collect();
        blocks.retain(|b| !b.colorings.is_empty());
        MaterializedHypergraph {
            r: t.r(),
            host_edges: t.host().edge_count(),
            blocks,
        }
    }

    pub fn vertex_count(&self) -> u64 {
        self.host_edges as u64 * self.r as u64
    }

    pub fn edge_count(&self) -> u64 {
        self.blocks.iter().map(|b| b.colorings.len() as u64).sum()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn vertex_id(&self, e: EdgeId, c: ColorId) -> u32 {
        (e as u32) * self.r + c as u32
    }

    /// Hyperedges as sorted vertex-id sextuples.
    pub fn hyperedges(&self) -> impl Iterator<Item = [u32; 6]> + '_ {
        self.blocks.iter().flat_map(move |b| {
            b.colorings.iter().map(move |cs| {
                let mut ids = [0u32; 6];
                for i in 0..6 {
                    ids[i] = self.vertex_id(b.edges[i], cs[i]);
                }
                ids.sort_unstable();
                ids
            })
        })
    }

    /// Degree of every hypergraph vertex, indexed by vertex id.
    pub fn degrees(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.vertex_count() as usize];
        for h in self.hyperedges() {
            for v in h {
                deg[v as usize] += 1;
            }
        }
        deg
    }

    /// Hyperedges containing every pair of `set`, by scanning.
    pub fn codegree(&self, set: &[(EdgeId, ColorId)]) -> u64 {
        self.blocks
            .iter()
            .map(|b| {
                let pos: Option<Vec<(usize, ColorId)>> = set
                    .iter()
                    .map(|&(e, c)| b.edges.iter().position(|&x| x == e).map(|p| (p, c)))
                    .collect();
                match pos {
                    None => 0,
                    Some(pos) => b
                        .colorings
                        .iter()
                        .filter(|cs| pos.iter().all(|&(p, c)| cs[p] == c))
                        .count() as u64,
                }
            })
            .sum()
    }

    /// Calls `visit(edges, colors, d)` for every `j`-set with positive
    /// co-degree `d`. Sets are grouped by their edge support so that each
    /// group is tallied in one pass over the blocks that carry it.
    pub fn for_each_codegree(&self, j: usize, mut visit: impl FnMut(&[EdgeId], &[ColorId], u64)) {
        assert!((1..=6).contains(&j));
        let subsets: Vec<Vec<usize>> = (0u32..64)
            .filter(|m| m.count_ones() as usize == j)
            .map(|m| vertices_of(m as u64).collect())
            .collect();
        let mut groups: HashMap<Vec<EdgeId>, Vec<(usize, &[usize])>> = HashMap::new();
        for (bi, b) in self.blocks.iter().enumerate() {
            for sub in &subsets {
                let mut key: Vec<(EdgeId, usize)> = sub.iter().map(|&p| (b.edges[p], p)).collect();
                key.sort_unstable();
                groups
                    .entry(key.iter().map(|&(e, _)| e).collect())
                    .or_default()
                    .push((bi, sub.as_slice()));
            }
        }
        let mut keys: Vec<_> = groups.keys().cloned().collect();
        keys.sort();
        let r = self.r as u64;
        let dense_len = r.checked_pow(j as u32).filter(|&x| x <= 1 << 24);
        for key in keys {
            let members = &groups[&key];
            let mut tally: HashMap<u64, u64> = HashMap::new();
            let mut dense = dense_len.map(|len| vec![0u32; len as usize]);
            for &(bi, _) in members {
                let b = &self.blocks[bi];
                // positions of the key edges inside this block, in key order
                let pos: Vec<usize> = key
                    .iter()
                    .map(|e| b.edges.iter().position(|x| x == e).unwrap())
                    .collect();
                for cs in &b.colorings {
                    let code = pos.iter().fold(0u64, |acc, &p| acc * r + cs[p] as u64);
                    match dense.as_mut() {
                        Some(d) => d[code as usize] += 1,
                        None => *tally.entry(code).or_default() += 1,
                    }
                }
            }
            let mut emit = |code: u64, d: u64| {
                let mut colors = vec![0 as ColorId; j];
                let mut c = code;
                for slot in colors.iter_mut().rev() {
                    *slot = (c % r) as ColorId;
                    c /= r;
                }
                visit(&key, &colors, d);
            };
            match dense {
                Some(d) => {
                    for (code, &v) in d.iter().enumerate() {
                        if v > 0 {
                            emit(code as u64, v as u64);
                        }
                    }
                }
                None => {
                    let mut entries: Vec<_> = tally.into_iter().collect();
                    entries.sort_unstable();
                    for (code, v) in entries {
                        emit(code, v);
                    }
                }
            }
        }
    }

    pub fn max_codegree(&self, j: usize) -> u64 {
        let mut best = 0;
        self.for_each_codegree(j, |_, _, d| best = best.max(d));
        best
    }
}
