mod common;

use proptest::prelude::*;
use snakes_sp::classic::bellman_ford;
use snakes_sp::snakes::{trace_snakes, ReweightState};
use snakes_sp::{differential_check, reweight, Reweighted, solve_with_report, Arc, Graph, HeapKind, SolveConfig, Variant, Weight};

fn weights(g: &Graph) -> Vec<Weight> {
    g.arcs().iter().map(|a| a.weight).collect()
}

/// A negative arc whose zero tail is cut by another snake's head: after two
/// iterations it heads a snake of length 2, one short of growing by one arc
/// per iteration. The run still converges within the iteration bound.
#[test]
fn snake_tail_cut_trace() {
    let g = common::load("snake_tail_cut.gr").graph;
    let mut st = ReweightState::new(g.clone(), HeapKind::Quaternary);
    let mut lengths = Vec::new();
    for _ in 0..2 {
        st.expand().unwrap();
        st.connect();
        st.adjust_weights().unwrap();
        let report = trace_snakes(st.graph()).unwrap();
        lengths.push(report.snakes.iter().map(|s| (s.head, s.length)).collect::<Vec<_>>());
    }
    assert_eq!(lengths[0], vec![(6, 5), (8, 3), (9, 4)]);
    assert_eq!(lengths[1], vec![(8, 7), (9, 2)]);
    assert_eq!(weights(st.graph()), vec![0, 3, 0, 0, 1, 0, 0, 0, -3, -1, 0]);
    // arc 9 runs 8 -> 2; its only zero predecessor arc is 3 -> 8 and the arc
    // into 3 is the negative head 1 -> 3
    let a = st.graph().arcs()[9];
    assert_eq!((a.source, a.target), (8, 2));

    let Reweighted::Artifact(art) = reweight(&g, &SolveConfig::default()).unwrap() else {
        panic!("no negative cycle expected");
    };
    assert_eq!(art.iterations, 3);
    assert!(art.iterations <= art.bound && !art.bound_exceeded);
}

#[test]
fn three_vertex_hand_trace() {
    let g = common::load("three_vertex.gr").graph;
    let mut st = ReweightState::new(g, HeapKind::Pairing);
    st.expand().unwrap();
    assert_eq!(st.potentials().to_vec(), vec![0, 0, -5]);
    let mut order = Vec::new();
    st.connect_traced(|v, k| order.push((v, k)));
    assert_eq!(order, vec![(2, -5), (0, 0), (1, 0)]);
    assert!(!st.adjust_weights().unwrap());
    assert_eq!(weights(st.graph()), vec![2, 0, 5]);
    assert_eq!(st.cumulative(), &[0, 0, -5]);
}

#[test]
fn golden_distances_under_every_configuration() {
    for case in common::hand_suite() {
        let oracle = bellman_ford(&case.graph, case.source).unwrap();
        for variant in [Variant::Basic, Variant::Improved] {
            for heap in [HeapKind::Quaternary, HeapKind::Pairing] {
                let cfg = SolveConfig::default().with_variant(variant).with_heap(heap);
                let report = solve_with_report(&case.graph, case.source, &cfg).unwrap();
                assert_eq!(
                    report.outcome.labels().map(|l| &l.dist),
                    oracle.labels().map(|l| &l.dist),
                    "{}",
                    case.name
                );
                assert_eq!(report.outcome.cycle().is_some(), oracle.cycle().is_some(), "{}", case.name);
            }
        }
    }
}

#[test]
fn strict_bound_accepts_converging_runs() {
    let cfg = SolveConfig {
        strict_bound: true,
        ..SolveConfig::default()
    };
    for i in 0..200 {
        let (g, s) = common::feasible_instance(i);
        assert!(solve_with_report(&g, s, &cfg).is_ok());
    }
}

#[test]
fn contraction_off_still_agrees_on_zero_cycle_free_input() {
    let cfg = SolveConfig {
        contraction: false,
        ..SolveConfig::default()
    };
    for i in 0..300u64 {
        let g = snakes_sp::gen::gen_hidden_potential(20, 60, 1, 6, 30, i).unwrap();
        assert!(differential_check(&g, 0, &cfg).unwrap().is_pass(), "instance {i}");
    }
}

fn arb_graph() -> impl Strategy<Value = (Graph, usize)> {
    (1usize..24).prop_flat_map(|n| {
        let arcs = prop::collection::vec((0..n, 0..n, -12i64..40), 0..4 * n + 1);
        (arcs, 0..n).prop_map(move |(arcs, s)| {
            let arcs = arcs.into_iter().map(|(u, v, w)| Arc::new(u, v, w)).collect();
            (Graph::new(n, arcs).unwrap(), s)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn agrees_with_bellman_ford((g, s) in arb_graph(), improved in any::<bool>(), pairing in any::<bool>()) {
        let cfg = SolveConfig::default()
            .with_variant(if improved { Variant::Improved } else { Variant::Basic })
            .with_heap(if pairing { HeapKind::Pairing } else { HeapKind::Quaternary });
        let verdict = differential_check(&g, s, &cfg).unwrap();
        prop_assert!(verdict.is_pass(), "{:?}", verdict);
    }
}
