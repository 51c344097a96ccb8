use crate::error::{Error, Result};
use crate::exact::Count;
use crate::graph::Graph;
use num_bigint::BigUint;

pub const DEFAULT_ORACLE_CAP: u64 = 1_000_000_000;

/// Enumerates all `r^m` colorings and tests every `k`-subset of vertices
/// directly. Ground truth for the partition engine.
pub fn brute_force_count(g: &Graph, r: u32, k: usize) -> Result<Count> {
    brute_force_count_with_cap(g, r, k, DEFAULT_ORACLE_CAP)
}

pub fn brute_force_count_with_cap(g: &Graph, r: u32, k: usize, cap: u64) -> Result<Count> {
    super::check_params(r, k)?;
    let m = g.edge_count();
    let total = BigUint::from(r).pow(m as u32);
    if total > BigUint::from(cap) {
        return Err(Error::cap("brute-force coloring enumeration", total, cap));
    }
    let cliques = clique_edge_lists(g, k);
    let mut colors = vec![0u32; m];
    let mut valid = 0u64;
    loop {
        let rainbow = cliques.iter().any(|edges| {
            let mut seen = 0u64;
            edges.iter().all(|&e| {
                let b = 1u64 << colors[e];
                let fresh = seen & b == 0;
                seen |= b;
                fresh
            })
        });
        if !rainbow {
            valid += 1;
        }
        // odometer
        let mut i = 0;
        loop {
            if i == m {
                return Ok(BigUint::from(valid));
            }
            colors[i] += 1;
            if colors[i] < r {
                break;
            }
            colors[i] = 0;
            i += 1;
        }
    }
}

// k-subsets by plain combination walk, independent of the bitset clique search
fn clique_edge_lists(g: &Graph, k: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mut edges = Vec::new();
        let mut complete = true;
        'pairs: for a in 0..k {
            for b in a + 1..k {
                match g.edge_id(idx[a], idx[b]) {
                    Some(e) => edges.push(e),
                    None => {
                        complete = false;
                        break 'pairs;
                    }
                }
            }
        }
        if complete {
            out.push(edges);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_examples() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(brute_force_count(&k4, 2, 4).unwrap(), BigUint::from(64u32));
        assert_eq!(brute_force_count(&k4, 6, 4).unwrap(), BigUint::from(45_936u32));
        assert_eq!(brute_force_count(&Graph::path(3).unwrap(), 12, 4).unwrap(), BigUint::from(144u32));
    }

    #[test]
    fn cap_refuses() {
        let k5 = Graph::complete(5).unwrap();
        assert!(matches!(brute_force_count_with_cap(&k5, 12, 4, 1000), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn clique_lists() {
        assert_eq!(clique_edge_lists(&Graph::complete(5).unwrap(), 4).len(), 5);
        assert_eq!(clique_edge_lists(&Graph::cycle(5).unwrap(), 3).len(), 0);
    }
}
