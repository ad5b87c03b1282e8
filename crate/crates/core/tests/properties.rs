mod common;

use proptest::prelude::*;

use bedom::connect::{connect_via_minor, d_partition};
use bedom::cover::{build_cover, build_rsets, verify_cover};
use bedom::domset::domset;
use bedom::generate::{generate, Family};
use bedom::ordering::wreach;
use bedom::protocols::{protocol_domset, OrderSource};
use bedom::sim::{RunOptions, SimModel};
use bedom::{Graph, LinearOrder};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_index_edges(n, &edges).unwrap()
        })
    })
}

fn arb_sparse(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, 1..=3usize, 0.5..=1.0f64, any::<u64>()).prop_map(|(n, k, p, seed)| {
        generate(&Family::PartialKTree { n, k, p }, seed).unwrap()
    })
}

fn arb_order(n: usize) -> impl Strategy<Value = LinearOrder> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|seq| LinearOrder::from_sequence(seq).unwrap())
}

fn graph_and_order(max_n: usize) -> impl Strategy<Value = (Graph, LinearOrder)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), arb_order(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn balls_grow_and_are_symmetric(g in arb_graph(9), r in 0..4usize) {
        for v in g.vertices() {
            let small = g.closed_ball(v, r);
            let big = g.closed_ball(v, r + 1);
            prop_assert!(small.members.iter().all(|&u| big.contains(u)));
            prop_assert!(small.contains(v));
            for u in g.vertices() {
                prop_assert_eq!(small.contains(u), g.closed_ball(u, r).contains(v));
            }
        }
    }

    #[test]
    fn distances_obey_triangle_inequality(g in arb_graph(9)) {
        for a in g.vertices() {
            for b in g.vertices() {
                for c in g.vertices() {
                    if let (Some(ab), Some(bc)) = (g.distance(a, b), g.distance(b, c)) {
                        let ac = g.distance(a, c);
                        prop_assert!(ac.is_some_and(|ac| ac <= ab + bc));
                    }
                }
            }
            prop_assert_eq!(g.distance(a, a), Some(0));
        }
    }

    #[test]
    fn serialization_round_trips(g in arb_graph(10)) {
        prop_assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g.clone());
        prop_assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g.clone());
        let text = serde_json::to_string(&g.to_json()).unwrap();
        prop_assert_eq!(Graph::parse_any(&text).unwrap(), g);
    }

    #[test]
    fn degeneracy_order_is_self_consistent(g in arb_sparse(30)) {
        let (k, order) = g.degeneracy_order();
        let back = g
            .vertices()
            .map(|v| g.neighbors(v).iter().filter(|&&u| order.less(u, v)).count())
            .max()
            .unwrap_or(0);
        prop_assert_eq!(back, k);
    }

    #[test]
    fn wreach_matches_path_enumeration((g, order) in graph_and_order(7), k in 0..5usize) {
        let table = wreach(&g, &order, k);
        let truth = common::wreach_by_paths(&g, &order, k);
        for v in g.vertices() {
            prop_assert_eq!(table.size(v), truth[v].len());
            for e in table.entries(v) {
                prop_assert_eq!(Some(&e.path), truth[v].get(&e.target));
            }
        }
        prop_assert!(table.verify_certificates(&g, &order).is_ok());
    }

    #[test]
    fn wreach_is_monotone_in_radius((g, order) in graph_and_order(9), k in 0..4usize) {
        let small = wreach(&g, &order, k);
        let big = wreach(&g, &order, k + 1);
        for v in g.vertices() {
            for e in small.entries(v) {
                prop_assert!(big.contains(v, e.target));
            }
        }
        prop_assert_eq!(big.restrict(k), small);
    }

    #[test]
    fn covers_pass_their_checks(g in arb_sparse(25), r in 1..3usize) {
        let order = g.degeneracy_order().1;
        let cover = build_cover(&g, &order, r);
        let report = verify_cover(&g, r, &cover);
        prop_assert!(report.pass(), "{:?}", report.violations);
        let rsets = build_rsets(&g, &order, r, &cover);
        for (v, set) in rsets.sets.iter().enumerate() {
            for &w in set {
                for x in g.closed_ball(w, r).members {
                    prop_assert!(cover.cluster(v).binary_search(&x).is_ok());
                }
            }
        }
    }

    #[test]
    fn domset_dominates_within_work_bound((g, order) in graph_and_order(12), r in 0..3usize) {
        let res = domset(&g, &order, r);
        prop_assert!(common::dominates(&g, &res.dominators, r));
        let cover = build_cover(&g, &order, r);
        let sum: usize = cover.clusters.iter().map(Vec::len).sum();
        prop_assert!(res.work <= (res.certificate_c + 1) * sum, "work {} > bound", res.work);
    }

    #[test]
    fn partitions_are_balls_of_radius_r(g in arb_sparse(30), r in 1..3usize) {
        let d = domset(&g, &g.degeneracy_order().1, r).sorted();
        let part = d_partition(&g, &d, r).unwrap();
        let blocks = part.blocks();
        prop_assert_eq!(blocks.values().map(Vec::len).sum::<usize>(), g.n());
        for (&v, block) in &blocks {
            prop_assert!(g.induced_eccentricity(v, block).is_some_and(|e| e <= r));
        }
        let mc = connect_via_minor(&g, &d, r).unwrap();
        for &(u, v) in &mc.minor.edges {
            prop_assert!(g.distance(u, v).is_some_and(|x| x <= 2 * r + 1));
        }
        prop_assert!(mc.result.check(&g).is_ok());
    }

    #[test]
    fn simulation_ignores_stepping_order(g in arb_sparse(20), seed in any::<u64>(), r in 1..3usize) {
        let src = OrderSource::injected(g.degeneracy_order().1);
        let model = SimModel::congest_bc(4096);
        let base = protocol_domset(&g, r, &src, model, &RunOptions::default()).unwrap();
        let shuffled = RunOptions { max_rounds: 0, parallel: false, shuffle_seed: Some(seed) };
        let other = protocol_domset(&g, r, &src, model, &shuffled).unwrap();
        prop_assert_eq!(&other.output, &base.output);
        prop_assert_eq!(other.trace.to_jsonl(), base.trace.to_jsonl());
        let par = RunOptions { max_rounds: 0, parallel: true, shuffle_seed: None };
        let other = protocol_domset(&g, r, &src, model, &par).unwrap();
        prop_assert_eq!(other.output, base.output);
    }
}

#[test]
fn minimum_of_a_short_path_is_reachable_from_both_ends() {
    let g = generate(&Family::Grid { rows: 4, cols: 5 }, 0).unwrap();
    let order = common::random_order(g.n(), 9);
    let r = 3;
    let table = wreach(&g, &order, r);
    // sample paths: lex-least shortest paths between all pairs at distance ≤ r
    for u in g.vertices() {
        for v in g.vertices() {
            if let Some(p) = bedom::connect::lex_shortest_path(&g, u, v, r) {
                let m = order.min_of(p.iter().copied()).unwrap();
                assert!(table.contains(u, m) && table.contains(v, m));
            }
        }
    }
}

#[test]
fn paths_between_close_dominators_connect() {
    for inst in bedom::generate::corpus() {
        let g = &inst.graph;
        for r in 1..=2 {
            let d = domset(g, &g.degeneracy_order().1, r).sorted();
            let mut set: Vec<usize> = d.clone();
            for (i, &a) in d.iter().enumerate() {
                for &b in &d[i + 1..] {
                    if let Some(p) = bedom::connect::lex_shortest_path(g, a, b, 2 * r + 1) {
                        set.extend(p);
                    }
                }
            }
            set.sort_unstable();
            set.dedup();
            assert!(g.is_connected_per_component(&set), "{}", inst.name);
        }
    }
}
