//! Distance from being k-partite: the least number of edges left inside
//! classes over all vertex k-partitions.

use super::{bit, Graph, Partition};
use crate::error::{Error, Result};

pub const DEFAULT_EXACT_CAP: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closeness {
    pub internal_edges: u64,
    pub partition: Partition,
    /// False when the value is a local-search upper bound (n above the cap).
    pub exact: bool,
}

pub fn closeness_to_kpartite(g: &Graph, k: usize) -> Result<Closeness> {
    closeness_to_kpartite_with_cap(g, k, DEFAULT_EXACT_CAP)
}

pub fn closeness_to_kpartite_with_cap(g: &Graph, k: usize, exact_cap: usize) -> Result<Closeness> {
    if k == 0 {
        return Err(Error::InvalidArgument("need at least one class".into()));
    }
    let n = g.n();
    if k >= n {
        let classes = (0..n).collect();
        return Ok(Closeness {
            internal_edges: 0,
            partition: Partition::new(classes, k)?,
            exact: true,
        });
    }
    let (seed_cost, seed) = local_search(g, k);
    if n > exact_cap {
        return Ok(Closeness {
            internal_edges: seed_cost,
            partition: Partition::new(seed, k)?,
            exact: false,
        });
    }
    let mut search = Exact {
        g,
        k,
        best: seed_cost,
        best_assign: seed,
        assign: vec![0; n],
        class_masks: vec![0; k],
    };
    search.descend(0, 0, 0);
    Ok(Closeness {
        internal_edges: search.best,
        partition: Partition::new(search.best_assign, k)?,
        exact: true,
    })
}

struct Exact<'a> {
    g: &'a Graph,
    k: usize,
    best: u64,
    best_assign: Vec<usize>,
    assign: Vec<usize>,
    class_masks: Vec<u64>,
}

impl Exact<'_> {
    // Class labels are introduced in increasing order, so each unordered
    // partition is visited once.
    fn descend(&mut self, v: usize, used: usize, cost: u64) {
        if cost >= self.best {
            return;
        }
        if v == self.g.n() {
            self.best = cost;
            self.best_assign.clone_from(&self.assign);
            return;
        }
        let limit = (used + 1).min(self.k);
        for c in 0..limit {
            let added = (self.g.neighbors(v) & self.class_masks[c]).count_ones() as u64;
            self.assign[v] = c;
            self.class_masks[c] |= bit(v);
            self.descend(v + 1, used.max(c + 1), cost + added);
            self.class_masks[c] &= !bit(v);
        }
    }
}

/// Greedy placement followed by single-vertex moves until no move helps.
fn local_search(g: &Graph, k: usize) -> (u64, Vec<usize>) {
    let n = g.n();
    let mut masks = vec![0u64; k];
    let mut assign = vec![0usize; n];
    for v in 0..n {
        let c = (0..k)
            .min_by_key(|&c| (g.neighbors(v) & masks[c]).count_ones())
            .unwrap();
        assign[v] = c;
        masks[c] |= bit(v);
    }
    loop {
        let mut improved = false;
        for v in 0..n {
            let cur = assign[v];
            let here = (g.neighbors(v) & masks[cur]).count_ones();
            let (best_c, best_cnt) = (0..k)
                .map(|c| (c, (g.neighbors(v) & masks[c] & !bit(v)).count_ones()))
                .min_by_key(|&(c, cnt)| (cnt, c))
                .unwrap();
            if best_cnt < here {
                masks[cur] &= !bit(v);
                masks[best_c] |= bit(v);
                assign[v] = best_c;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    let cost = g
        .edges()
        .iter()
        .filter(|&&(u, v)| assign[u] == assign[v])
        .count() as u64;
    (cost, assign)
}
