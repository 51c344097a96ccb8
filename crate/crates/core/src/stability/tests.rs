use super::*;
use crate::exact::{ratio, rational_pow};
use crate::graph::{closeness_to_kpartite, enumerate_graphs};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn k(n: usize) -> Graph {
    Graph::complete(n).unwrap()
}

fn uniform(host: &Graph, r: u32, list: u64) -> Template {
    Template::new(host.clone(), r, vec![list; host.edge_count()]).unwrap()
}

fn xi(p: u32, q: u32) -> BigRational {
    ratio(p, q)
}

#[test]
fn singleton_edges_are_removed() {
    let host = k(4);
    assert_eq!(remove_singleton_edges(&uniform(&host, 12, 1)).edge_count(), 0);
    let full = Template::complete(&host, 12).unwrap();
    assert_eq!(remove_singleton_edges(&full), host);
    let mut lists = vec![0b1u64; 6];
    lists[2] = 0b11;
    let g0 = remove_singleton_edges(&Template::new(host.clone(), 12, lists).unwrap());
    assert_eq!(g0.edges(), &[host.edge(2)]);
}

#[test]
fn operation1_examples() {
    let host = k(4);
    let full = Template::complete(&host, 12).unwrap();
    let cfg = CleaningConfig::for_template(&full, xi(1, 100)).unwrap();
    assert_eq!(operation1_step(&CleaningState::initial(&full), &full, &cfg).unwrap(), None);
    let pairs = uniform(&host, 12, 0b11);
    let w = operation1_step(&CleaningState::initial(&pairs), &pairs, &cfg).unwrap().unwrap();
    assert_eq!(w.vertex, 0);
    assert_eq!(w.list_product, BigUint::from(8u32));
    let edges = Graph::from_edges(4, [(1, 2), (2, 3), (1, 3)]).unwrap();
    let t = Template::complete(&edges, 12).unwrap();
    let w = operation1_step(&CleaningState::initial(&t), &t, &cfg).unwrap().unwrap();
    assert_eq!((w.vertex, w.list_product.clone()), (0, BigUint::one()));
}

// Independent guard: clear ξ² = p/q by raising both sides to the power 3q.
fn brute_op1(product: &BigUint, r: u32, xi_sq: &BigRational, n_i: usize) -> bool {
    let p = xi_sq.numer().to_biguint().unwrap();
    let q = xi_sq.denom().to_biguint().unwrap();
    let q32: u32 = q.clone().try_into().unwrap();
    let rhs_exp: u32 = ((BigUint::from(2u32) * &q - p) * (n_i as u64 - 1)).try_into().unwrap();
    product.pow(3 * q32) <= BigUint::from(r).pow(rhs_exp)
}

fn random_template(n: usize, r: u32, seed: u64, full_prob: f64) -> Template {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let host = Graph::complete(n).unwrap();
    let lists = (0..host.edge_count())
        .map(|_| {
            if rng.gen_bool(full_prob) {
                crate::template::color_mask(r)
            } else {
                let size = rng.gen_range(1..=5u32);
                (0..size).fold(0u64, |m, c| m | 1 << c)
            }
        })
        .collect();
    Template::new(host, r, lists).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn operation1_guard_matches_cleared_powers(seed in any::<u64>(), n in 3usize..=9, r in 12u32..=16, q in 10u32..=40) {
        let t = random_template(n, r, seed, 0.75);
        let cfg = CleaningConfig::for_template(&t, xi(1, q)).unwrap();
        let state = CleaningState::initial(&t);
        let got = operation1_step(&state, &t, &cfg).unwrap();
        let g = state.graph();
        let xi_sq = rational_pow(&cfg.xi, 2);
        let mut first = None;
        for v in 0..n {
            let product = vertices_of(g.neighbors(v))
                .map(|u| BigUint::from(t.list_size(t.host().edge_id(u, v).unwrap())))
                .fold(BigUint::one(), |a, b| a * b);
            if brute_op1(&product, r, &xi_sq, n) {
                first.get_or_insert(v);
            }
        }
        prop_assert_eq!(got.map(|w| w.vertex), first);
    }

    // With no applicable Operation 1, every vertex keeps a 0.05 fraction of
    // full-list neighbors when the other lists have at most five colors.
    #[test]
    fn no_operation1_means_many_full_neighbors(seed in any::<u64>(), n in 3usize..=12, r in 12u32..=20) {
        let t = random_template(n, r, seed, 0.9);
        let cfg = CleaningConfig::for_template(&t, xi(1, 100)).unwrap();
        let state = CleaningState::initial(&t);
        if operation1_step(&state, &t, &cfg).unwrap().is_none() {
            for v in 0..n {
                let full = vertices_of(state.graph().neighbors(v))
                    .filter(|&u| t.list_size(t.host().edge_id(u, v).unwrap()) == r)
                    .count();
                prop_assert!(20 * full > n);
                prop_assert_eq!(full, t.r_neighborhood(v).count_ones() as usize);
            }
        }
    }

    #[test]
    fn traces_replay(seed in any::<u64>(), n in 4usize..=9, r in 6u32..=12, two_first in any::<bool>()) {
        let t = random_template(n, r, seed, 0.6);
        let order = if two_first { OperationOrder::TwoFirst } else { OperationOrder::OneFirst };
        let cfg = CleaningConfig::for_template(&t, xi(1, 3)).unwrap().with_order(order);
        let trace = clean(&t, &cfg).unwrap();
        prop_assert!(trace.steps.len() <= n);
        let mut state = CleaningState::initial(&t);
        for step in &trace.steps {
            prop_assert!(witness_holds(&state, &t, &cfg, step).unwrap());
            prop_assert_eq!(step.n_before - step.n_after, if step.operation == 1 { 1 } else { 3 });
            state.remove(step.removed.iter().fold(0, |m, &v| m | bit(v)));
        }
        prop_assert!(replay(&t, &trace).is_ok());
        let mut forged = trace.clone();
        forged.n_p += 1;
        prop_assert!(replay(&t, &forged).is_err());
    }

    #[test]
    fn larger_lists_never_lose_critical_triangles(seed in any::<u64>(), n in 4usize..=7, r in 6u32..=9) {
        let t = random_template(n, r, seed, 0.5);
        let bigger = t.lift(3);
        prop_assert!(t.is_subtemplate_of(&bigger).unwrap());
        let state = CleaningState::new(&t, t.host(), t.host().vertex_mask()).unwrap();
        let a = critical_sets(&state, &t, n, CopyReading::PairSets).unwrap();
        let b = critical_sets(&state, &bigger, n, CopyReading::PairSets).unwrap();
        prop_assert!(a.triangles.iter().all(|x| b.triangles.contains(x)));
    }
}

#[test]
fn cleaning_examples() {
    let host = k(6);
    let singles = uniform(&host, 12, 1);
    let cfg = CleaningConfig::for_template(&singles, xi(1, 2)).unwrap();
    let trace = clean(&singles, &cfg).unwrap();
    assert_eq!(trace.initial_edges, 0);
    assert_eq!(trace.stop, StopReason::BelowFloor);
    // floor ξ² n = 1.5
    assert_eq!(trace.n_p, 1);
    assert!(trace.steps.iter().all(|s| s.operation == 1));
    let full = Template::complete(&host, 12).unwrap();
    let cfg = CleaningConfig::for_template(&full, xi(1, 100)).unwrap();
    let trace = clean(&full, &cfg).unwrap();
    assert!(trace.steps.is_empty());
    assert_eq!(trace.stop, StopReason::NoOperation);
    assert_eq!(trace.final_graph6, host.graph6());
    replay(&full, &trace).unwrap();
}

// K_6 whose triangle {0,1,2} has lists (full, 3 colors, 2 colors); every
// other edge is a singleton, so no rainbow K_4 goes through that triangle.
fn starved_fixture() -> Template {
    let host = k(6);
    let r = 12;
    let mut lists = vec![0b1u64; host.edge_count()];
    lists[host.edge_id(0, 1).unwrap()] = crate::template::color_mask(r);
    lists[host.edge_id(1, 2).unwrap()] = 0b111;
    lists[host.edge_id(0, 2).unwrap()] = 0b11;
    for x in 3..6 {
        for v in 0..3 {
            lists[host.edge_id(v, x).unwrap()] = 0b11 << (2 * x);
        }
    }
    Template::new(host, r, lists).unwrap()
}

#[test]
fn operation2_examples() {
    let pairs = uniform(&k(5), 12, 0b11);
    let cfg = CleaningConfig::for_template(&pairs, xi(1, 10)).unwrap();
    assert_eq!(operation2_step(&CleaningState::initial(&pairs), &pairs, &cfg).unwrap(), None);

    let full = Template::complete(&k(5), 12).unwrap();
    let cfg = CleaningConfig::for_template(&full, xi(1, 10)).unwrap();
    assert_eq!(operation2_step(&CleaningState::initial(&full), &full, &cfg).unwrap(), None);

    let t = starved_fixture();
    let cfg = CleaningConfig::for_template(&t, xi(1, 10)).unwrap();
    let state = CleaningState::initial(&t);
    let w = operation2_step(&state, &t, &cfg).unwrap().unwrap();
    assert_eq!(w.triangle, [0, 1, 2]);
    assert_eq!(w.list_sizes, [12, 3, 2]);
    assert_eq!(w.joint_neighbors, 3);
    // direct recomputation of the guard
    assert!(rational_from(3u32) >= rational_from(19u32) * ratio(1u32, 100u32) * rational_from(3u32));
    assert!(!is_critical_count(&w.rainbow_copies, 6));
    let everything = operation2_step_with(&state, &t, &cfg, &|_, _| true).unwrap();
    assert_eq!(everything, None);
}

#[test]
fn critical_examples() {
    let full = Template::complete(&k(5), 12).unwrap();
    let state = CleaningState::initial(&full);
    let x = critical_sets(&state, &full, 5, CopyReading::PairSets).unwrap();
    assert_eq!(x.triangles.len(), 10);
    assert_eq!(
        full.count_rainbow_copies_through_triangle([0, 1, 2], full.host(), CopyReading::PairSets).unwrap(),
        BigUint::from(1_330_560u32)
    );
    // each edge in 3 critical triangles, 3^12 < 5^11
    assert!(x.edges.is_empty() && x.vertices.is_empty());

    let poor = Template::complete(&k(6), 5).unwrap();
    let x = critical_sets(&CleaningState::initial(&poor), &poor, 6, CopyReading::PairSets).unwrap();
    assert!(x.triangles.is_empty() && x.edges.is_empty() && x.vertices.is_empty());
}

// In K_12 every edge lies in 10 triangles and 10^12 >= 12^11, while a
// vertex lies in 55 and 55^12 < 12^23: edges critical, vertices not.
#[test]
fn critical_sets_are_threshold_driven() {
    let full = Template::complete(&k(12), 6).unwrap();
    let x = critical_sets(&CleaningState::initial(&full), &full, 12, CopyReading::PairSets).unwrap();
    assert_eq!(x.triangles.len(), 220);
    assert_eq!(x.edges.len(), 66);
    assert!(x.vertices.is_empty());
    let k11 = Template::complete(&k(11), 6).unwrap();
    let x = critical_sets(&CleaningState::initial(&k11), &k11, 11, CopyReading::PairSets).unwrap();
    assert_eq!(x.triangles.len(), 165);
    assert!(x.edges.is_empty());
}

#[test]
fn histograms() {
    let full = Template::complete(&k(4), 12).unwrap();
    let h = list_histogram(&full);
    assert_eq!((h.counts[12], h.m), (6, 0));
    let pairs = uniform(&k(4), 12, 0b11);
    assert_eq!(list_histogram(&pairs).m, 6);
    let t = random_template(7, 12, 9, 0.5);
    assert_eq!(list_histogram(&t).counts.iter().sum::<u64>(), 21);
}

#[test]
fn supersaturation_values() {
    let b = supersaturation_bound(6, 1, 3, 15).unwrap();
    let center = ratio(144u32, 6u32) / rational_pow(&ratio(2_718_281_828_459u64, 1_000_000_000_000u64), 6);
    assert!(b.lo <= center && center <= b.hi);
    assert!(b.lo > ratio(5948u32, 100_000u32) && b.hi < ratio(5950u32, 100_000u32));
    let vacuous = supersaturation_bound(6, 1, 3, 10).unwrap();
    assert!(!vacuous.hi.is_positive());
    // doubling the bracket term (e + t - 12) from 4 to 8 doubles the bound
    let doubled = supersaturation_bound(6, 5, 3, 15).unwrap();
    assert_eq!(doubled.lo, &b.lo * rational_from(2u32));
    assert!(supersaturation_bound(0, 1, 3, 1).is_err());
}

#[test]
fn default_xi_is_below_the_true_value() {
    let x = default_xi(&ratio(1u32, 4u32)).unwrap();
    let e6 = euler_pow_bounds(6);
    assert!(x <= ratio(1u32, 4u32) / (rational_from(300u32) * e6.lo.clone()));
    assert!(x < ratio(1u32, 100u32));
    assert!(CleaningConfig::new(12, x, 10).is_ok());
    assert!(CleaningConfig::new(12, rational_from(1u32), 10).is_err());
}

// Every graph on at most 6 vertices that is not t-close to tripartite has at
// least as many K_4s as the bound demands.
#[test]
fn supersaturation_holds_exhaustively() {
    let mut checked = 0;
    for n in 1..=6 {
        for g in enumerate_graphs(n).unwrap() {
            let close = closeness_to_kpartite(&g, 3).unwrap();
            assert!(close.exact);
            let k4 = rational_from(g.count_cliques(4));
            for t in 1..close.internal_edges {
                let b = supersaturation_bound(n as u64, t, 3, g.edge_count() as u64).unwrap();
                assert!(k4 >= b.hi, "{} t={t}", g.graph6());
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}
