use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rtl_core::counting::{brute_force_count, count_colorings, partition_polynomial};
use rtl_core::{CopyReading, Graph, Template};

fn random_graph(n: usize, density: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(density))
        .collect();
    Graph::from_edges(n, edges).unwrap()
}

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    Graph::from_edges(g.n(), g.edges().iter().map(|&(u, v)| (perm[u], perm[v]))).unwrap()
}

fn random_lists(m: usize, r: u32, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..m)
        .map(|_| (0..r).filter(|_| rng.gen_bool(0.7)).fold(0u64, |acc, c| acc | 1 << c))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn engine_agrees_with_enumeration(n in 3usize..=6, density in 0.3f64..1.0, seed in any::<u64>(), r in 1u32..=7, k in 3usize..=4) {
        let g = random_graph(n, density, seed);
        if (r as u64).pow(g.edge_count() as u32) <= 2_000_000 {
            prop_assert_eq!(count_colorings(&g, r, k).unwrap(), brute_force_count(&g, r, k).unwrap());
        }
    }

    #[test]
    fn counts_ignore_vertex_labels(n in 4usize..=6, seed in any::<u64>(), r in 4u32..=7) {
        let g = random_graph(n, 0.7, seed);
        let mut perm: Vec<usize> = (0..n).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        for i in (1..n).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let h = relabel(&g, &perm);
        prop_assert_eq!(count_colorings(&g, r, 4).unwrap(), count_colorings(&h, r, 4).unwrap());
        if n <= 5 {
            let (pg, ph) = (partition_polynomial(&g, 4).unwrap(), partition_polynomial(&h, 4).unwrap());
            prop_assert_eq!(pg.coefficients(), ph.coefficients());
        }
    }

    #[test]
    fn polynomial_evaluates_to_count(n in 4usize..=5, seed in any::<u64>(), r in 1u64..=14) {
        let g = random_graph(n, 0.8, seed);
        let p = partition_polynomial(&g, 4).unwrap();
        prop_assert_eq!(p.eval(r), count_colorings(&g, r as u32, 4).unwrap());
    }

    #[test]
    fn adding_an_edge_costs_at_most_a_factor_r(n in 4usize..=6, seed in any::<u64>(), r in 6u32..=8) {
        let g = random_graph(n, 0.8, seed);
        if g.edge_count() > 0 {
            let smaller = g.spanning_subgraph(|e| e != 0);
            let big = count_colorings(&g, r, 4).unwrap();
            prop_assert!(big <= count_colorings(&smaller, r, 4).unwrap() * r);
        }
    }

    #[test]
    fn rainbow_copies_grow_with_lists(n in 4usize..=7, seed in any::<u64>(), r in 6u32..=10) {
        let host = random_graph(n, 0.85, seed);
        let lists = random_lists(host.edge_count(), r, seed);
        let t = Template::new(host.clone(), r, lists.clone()).unwrap();
        let wider: Vec<u64> = lists.iter().enumerate().map(|(i, &l)| l | 1 << (i as u32 % r)).collect();
        let u = Template::new(host, r, wider).unwrap();
        prop_assert!(t.is_subtemplate_of(&u).unwrap());
        prop_assert!(t.count_rainbow_copies() <= u.count_rainbow_copies());
    }

    #[test]
    fn rainbow_copies_ignore_color_names(n in 4usize..=7, seed in any::<u64>(), r in 6u32..=10, shift in 1u32..=9) {
        let host = random_graph(n, 0.85, seed);
        let lists = random_lists(host.edge_count(), r, seed);
        let rotate = |l: u64| (0..r).filter(|c| l >> c & 1 == 1).fold(0u64, |acc, c| acc | 1 << ((c + shift) % r));
        let t = Template::new(host.clone(), r, lists.clone()).unwrap();
        let u = Template::new(host, r, lists.into_iter().map(rotate).collect()).unwrap();
        prop_assert_eq!(t.count_rainbow_copies(), u.count_rainbow_copies());
    }

    #[test]
    fn triangle_counts_sum_to_four_per_copy(n in 4usize..=7, seed in any::<u64>(), r in 6u32..=9) {
        let host = random_graph(n, 0.85, seed);
        let t = Template::new(host.clone(), r, random_lists(host.edge_count(), r, seed)).unwrap();
        let total: num_bigint::BigUint = host
            .triangles()
            .into_iter()
            .map(|tri| t.count_rainbow_copies_through_triangle(tri, &host, CopyReading::PairSets).unwrap())
            .sum();
        prop_assert_eq!(total, t.count_rainbow_copies() * 4u32);
    }
}

// A single coloring is a template with singleton lists; its rainbow copies
// are exactly its rainbow K_4s, so it is rainbow-K_4-free iff none exist.
#[test]
fn colorings_as_templates() {
    let g = Graph::complete(5).unwrap();
    let r = 10;
    let mut free = 0u64;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..400 {
        let colors: Vec<u8> = (0..g.edge_count()).map(|_| rng.gen_range(0..r as u8)).collect();
        let t = Template::from_coloring(&g, &colors, r).unwrap();
        let rainbow = g
            .enumerate_cliques(4)
            .members
            .iter()
            .filter(|&&q| {
                let mut seen = 0u64;
                g.clique_edges(q).iter().all(|&e| {
                    let fresh = seen >> colors[e] & 1 == 0;
                    seen |= 1 << colors[e];
                    fresh
                })
            })
            .count();
        assert_eq!(t.count_rainbow_copies(), num_bigint::BigUint::from(rainbow));
        free += u64::from(rainbow == 0);
    }
    assert!(free > 0);
}
