//! Set-partition enumeration of the constrained edges.
//!
//! A coloring induces a partition of the edge set into color classes, and
//! whether it contains a rainbow `K_k` depends on that partition alone. So the
//! number of valid `r`-colorings is `Σ_j S_j · r(r-1)...(r-j+1)`, where `S_j`
//! counts valid partitions with `j` blocks. Partitions are generated as
//! restricted growth strings; a clique is checked when its last edge (in
//! placement order) receives a class.

use crate::graph::{EdgeId, Graph};
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineOptions {
    /// Prefix length at which the enumeration is split into parallel tasks.
    pub prefix_depth: usize,
    pub parallel: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            prefix_depth: 4,
            parallel: true,
        }
    }
}

pub(crate) struct ConstraintIndex {
    /// Constrained edges in placement order.
    order: Vec<EdgeId>,
    /// Edges lying in no `K_k`.
    free: usize,
    /// Per clique, the placement positions of its edges.
    clique_pos: Vec<Vec<u16>>,
    /// Per position, the cliques whose last edge sits there.
    completing: Vec<Vec<u32>>,
    width: u32,
}

impl ConstraintIndex {
    pub(crate) fn new(g: &Graph, k: usize) -> Self {
        let cliques: Vec<Vec<EdgeId>> = g
            .enumerate_cliques(k)
            .members
            .iter()
            .map(|&q| g.clique_edges(q))
            .collect();
        let mut load = vec![0usize; g.edge_count()];
        for q in &cliques {
            for &e in q {
                load[e] += 1;
            }
        }
        // most constrained first; ties by edge id
        let mut order: Vec<EdgeId> = (0..g.edge_count()).filter(|&e| load[e] > 0).collect();
        order.sort_by_key(|&e| (std::cmp::Reverse(load[e]), e));
        let mut pos_of = vec![u16::MAX; g.edge_count()];
        for (p, &e) in order.iter().enumerate() {
            pos_of[e] = p as u16;
        }
        let clique_pos: Vec<Vec<u16>> = cliques
            .iter()
            .map(|q| q.iter().map(|&e| pos_of[e]).collect())
            .collect();
        let mut completing = vec![Vec::new(); order.len()];
        for (i, q) in clique_pos.iter().enumerate() {
            let last = *q.iter().max().expect("cliques have edges");
            completing[last as usize].push(i as u32);
        }
        ConstraintIndex {
            free: g.edge_count() - order.len(),
            order,
            clique_pos,
            completing,
            width: (k * (k - 1) / 2) as u32,
        }
    }

    pub(crate) fn constrained(&self) -> usize {
        self.order.len()
    }

    pub(crate) fn free(&self) -> usize {
        self.free
    }

    #[inline]
    fn violated(&self, pos: usize, classes: &[u8]) -> bool {
        self.completing[pos].iter().any(|&q| {
            let mut seen = 0u64;
            for &p in &self.clique_pos[q as usize] {
                let b = 1u64 << classes[p as usize];
                if seen & b != 0 {
                    return false;
                }
                seen |= b;
            }
            seen.count_ones() == self.width
        })
    }

    /// Valid partitions of the constrained edges by block count, using at most
    /// `max_blocks` blocks (at most 64).
    pub(crate) fn block_counts(&self, max_blocks: usize, opts: &EngineOptions) -> Vec<u128> {
        assert!(max_blocks <= 64, "class indices must fit a u64 mask");
        let m = self.order.len();
        let mut totals = vec![0u128; m.min(max_blocks) + 1];
        if m == 0 {
            totals[0] = 1;
            return totals;
        }
        if max_blocks == 0 {
            return totals;
        }
        let depth = opts.prefix_depth.min(m);
        let mut prefixes = Vec::new();
        let mut classes = vec![0u8; m];
        self.collect_prefixes(0, 0, depth, max_blocks, &mut classes, &mut prefixes);

        let run = |(prefix, blocks): &(Vec<u8>, usize)| {
            let mut local = vec![0u128; totals.len()];
            let mut classes = vec![0u8; m];
            classes[..depth].copy_from_slice(prefix);
            self.descend(depth, *blocks, max_blocks, &mut classes, &mut local);
            local
        };
        let partials: Vec<Vec<u128>> = if opts.parallel {
            prefixes.par_iter().map(run).collect()
        } else {
            prefixes.iter().map(run).collect()
        };
        // ordered reduction
        for part in partials {
            for (t, p) in totals.iter_mut().zip(part) {
                *t += p;
            }
        }
        totals
    }

    fn collect_prefixes(
        &self,
        pos: usize,
        blocks: usize,
        depth: usize,
        max_blocks: usize,
        classes: &mut [u8],
        out: &mut Vec<(Vec<u8>, usize)>,
    ) {
        if pos == depth {
            out.push((classes[..depth].to_vec(), blocks));
            return;
        }
        for c in 0..(blocks + 1).min(max_blocks) {
            classes[pos] = c as u8;
            if !self.violated(pos, classes) {
                self.collect_prefixes(pos + 1, blocks.max(c + 1), depth, max_blocks, classes, out);
            }
        }
    }

    fn descend(&self, pos: usize, blocks: usize, max_blocks: usize, classes: &mut [u8], counts: &mut [u128]) {
        if pos == classes.len() {
            counts[blocks] += 1;
            return;
        }
        for c in 0..(blocks + 1).min(max_blocks) {
            classes[pos] = c as u8;
            if !self.violated(pos, classes) {
                self.descend(pos + 1, blocks.max(c + 1), max_blocks, classes, counts);
            }
        }
    }
}

/// Adds `free` unconstrained elements to partitions counted by block number:
/// each new element joins one of the `j` blocks or opens a new one.
pub(crate) fn add_free_elements(counts: &[u128], free: usize) -> Vec<u128> {
    let mut cur = counts.to_vec();
    for _ in 0..free {
        let mut next = vec![0u128; cur.len() + 1];
        for (j, &c) in cur.iter().enumerate() {
            next[j] += c * j as u128;
            next[j + 1] += c;
        }
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_partitions() {
        let g = Graph::complete(4).unwrap();
        let idx = ConstraintIndex::new(&g, 4);
        assert_eq!(idx.constrained(), 6);
        assert_eq!(idx.free(), 0);
        let counts = idx.block_counts(64, &EngineOptions::default());
        assert_eq!(counts, vec![0, 1, 31, 90, 65, 15, 0]);
    }

    #[test]
    fn split_depth_and_threads_do_not_change_counts() {
        let g = Graph::complete(5).unwrap();
        let idx = ConstraintIndex::new(&g, 4);
        let base = idx.block_counts(64, &EngineOptions { prefix_depth: 0, parallel: false });
        for depth in [1, 2, 4, 7, 10, 20] {
            for parallel in [false, true] {
                assert_eq!(idx.block_counts(64, &EngineOptions { prefix_depth: depth, parallel }), base);
            }
        }
    }

    #[test]
    fn free_elements_follow_stirling() {
        let row = add_free_elements(&[1], 5);
        assert_eq!(row, vec![0, 1, 15, 25, 10, 1]);
    }
}
