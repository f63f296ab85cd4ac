//! Worked examples for every public operation, checked end to end.

use std::io::Write;

use qstream::baselines::{run_greedy, run_stochastic_greedy, sample_size};
use qstream::boostratio::{pass_bound, run_boostratio, run_qs_br, run_qs_plus_plus, BoostParams};
use qstream::element::{elements, Element};
use qstream::harness::{adversarial_trials, Algorithm};
use qstream::objectives::{
    adversarial_eval, load_edge_list, make_revenue_instance, max_cover_eval, revenue_eval,
    AdversarialInstance, GraphInstance, MaxCover, Modular,
};
use qstream::oracle::{brute_force_opt, brute_force_opt_capped, CountingOracle};
use qstream::quickstream::{
    delta_ratio, dispatch, ell, query_bound, run_quicksingleton, run_quickstream,
    run_quickstream_largek, select_route, LargeKConfig, QuickStream, QuickStreamConfig, Route,
};
use qstream::Error;

fn path3() -> GraphInstance {
    GraphInstance::from_edges(3, [(0, 1), (1, 2)])
}

/// Center 0, leaves 1, 2, 3.
fn star() -> GraphInstance {
    GraphInstance::from_edges(4, [(0, 1), (0, 2), (0, 3)])
}

fn edge_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

// counted evaluation

#[test]
fn counted_eval_examples() {
    let g = path3();
    let f = MaxCover::new(&g);
    let mut oracle = CountingOracle::new(&f).unwrap();
    assert_eq!(oracle.query(&elements([1u32])).unwrap(), 3.0);
    assert_eq!(oracle.ledger().queries(), 1);
    assert_eq!(oracle.query(&[]).unwrap(), 0.0);
    assert_eq!(oracle.ledger().queries(), 2);
    assert!(matches!(
        oracle.query(&elements([3u32])),
        Err(Error::ElementOutOfRange { index: 3, n: 3 })
    ));
    assert_eq!(oracle.ledger().queries(), 2);

    let adv = AdversarialInstance::plain(20, 2, 3).unwrap();
    assert_eq!(adversarial_eval(&adv, &elements(0u32..10)), 6.0);
}

#[test]
fn cached_marginal_examples() {
    let g = star();
    let f = MaxCover::new(&g);
    let mut oracle = CountingOracle::new(&f).unwrap();
    let mut cursor = oracle.cursor_at(&elements([1u32])).unwrap();
    assert_eq!(
        oracle
            .cached_marginal(&mut cursor, 2.0, &elements([2u32]))
            .unwrap(),
        1.0
    );
    let mut empty = oracle.cursor();
    assert_eq!(
        oracle
            .cached_marginal(&mut empty, 0.0, &elements([0u32]))
            .unwrap(),
        4.0
    );
    assert_eq!(oracle.ledger().queries(), 2);

    let m = Modular::new(vec![2.0, 1.0]);
    let mut oracle = CountingOracle::new(&m).unwrap();
    let mut cursor = oracle.cursor_at(&elements([0u32])).unwrap();
    assert_eq!(
        oracle
            .cached_marginal(&mut cursor, 2.0, &elements([1u32]))
            .unwrap(),
        1.0
    );
}

#[test]
fn brute_force_examples() {
    let g = star();
    assert_eq!(brute_force_opt(&MaxCover::new(&g), 2).unwrap().1, 4.0);
    let adv = AdversarialInstance::plain(8, 2, 3).unwrap();
    assert_eq!(brute_force_opt(&adv, 3).unwrap().1, 3.0);
    let (set, v) = brute_force_opt(&MaxCover::new(&g), 0).unwrap();
    assert!(set.is_empty());
    assert_eq!(v, 0.0);
    let big = Modular::new(vec![1.0; 21]);
    assert!(matches!(
        brute_force_opt(&big, 2),
        Err(Error::BruteForceCap { n: 21, cap: 20 })
    ));
    assert!(brute_force_opt_capped(&big, 2, 25).is_ok());
}

#[test]
fn brute_force_matches_top_k_on_modular() {
    let w = vec![0.5, 7.0, 3.0, 3.5, 1.0, 6.0];
    let f = Modular::new(w.clone());
    let mut sorted = w;
    sorted.sort_by(|a, b| b.total_cmp(a));
    for k in 1..=4 {
        let top: f64 = sorted[..k].iter().sum();
        assert_eq!(brute_force_opt(&f, k).unwrap().1, top);
    }
}

#[test]
fn normalization_is_checked() {
    struct Shifted;
    impl qstream::Objective for Shifted {
        type State = usize;
        fn ground_size(&self) -> usize {
            2
        }
        fn empty_state(&self) -> usize {
            0
        }
        fn state_value(&self, s: &usize) -> f64 {
            1.0 + *s as f64
        }
        fn value_with(&self, s: &mut usize, extra: &[Element]) -> f64 {
            1.0 + (*s + extra.len()) as f64
        }
        fn insert(&self, s: &mut usize, extra: &[Element]) {
            *s += extra.len();
        }
    }
    assert!(matches!(CountingOracle::new(&Shifted), Err(Error::NotNormalized(v)) if v == 1.0));
}

// objectives

#[test]
fn edge_list_examples() {
    let g = load_edge_list(edge_file("0 1\n1 2").path()).unwrap();
    assert_eq!((g.node_count(), g.edge_count()), (3, 2));
    assert_eq!(g.neighbors(1), &[0, 2]);

    let only_comments = edge_file("# nothing\n# here\n");
    assert!(matches!(
        load_edge_list(only_comments.path()),
        Err(Error::EmptyGraph(_))
    ));

    let g = load_edge_list(edge_file("5 9\n9 5\n5 5").path()).unwrap();
    assert_eq!((g.node_count(), g.edge_count()), (2, 1));
    assert_eq!(g.label(Element(0)), 5);
    assert_eq!(g.label(Element(1)), 9);

    let bad = edge_file("# header\n0 1\n1 x\n");
    match load_edge_list(bad.path()) {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
        other => panic!("expected parse error, got {other:?}"),
    }
    let g = load_edge_list(edge_file("0\t1\n  2   3 \n\n").path()).unwrap();
    assert_eq!(g.edge_count(), 2);
    assert!(matches!(
        load_edge_list("/nonexistent/edges.txt"),
        Err(Error::Io(_))
    ));
}

#[test]
fn max_cover_examples() {
    let g = path3();
    assert_eq!(max_cover_eval(&g, &elements([1u32])), 3);
    assert_eq!(max_cover_eval(&g, &[]), 0);
    assert_eq!(max_cover_eval(&g, &elements([0u32, 1, 2])), 3);
    // isolated vertices cover nothing
    let g = GraphInstance::from_edges(3, [(0, 1)]);
    assert_eq!(max_cover_eval(&g, &elements([2u32])), 0);
}

#[test]
fn revenue_examples() {
    let g = GraphInstance::from_edges(2, [(0, 1)]);
    let r = make_revenue_instance(&g, 11);
    // node 0's revenue from {1} is 1^α = 1; node 1 gets 0^α = 0
    assert!((revenue_eval(&r, &elements([1u32])) - 1.0).abs() < 1e-12);
    assert_eq!(revenue_eval(&r, &[]), 0.0);

    let g = GraphInstance::from_edges(3, [(0, 1), (0, 2)]);
    let r = make_revenue_instance(&g, 1).with_alpha(vec![0.5, 0.3, 0.7]);
    // node 0 sees √2; nodes 1 and 2 see nothing from {1, 2}
    assert!((revenue_eval(&r, &elements([1u32, 2])) - 2f64.sqrt()).abs() < 1e-12);

    let big = qstream::objectives::generate::gnm(100, 300, 5);
    let a = make_revenue_instance(&big, 3);
    let b = make_revenue_instance(&big, 3);
    let c = make_revenue_instance(&big, 4);
    assert_eq!(a.alpha(), b.alpha());
    assert_ne!(a.alpha(), c.alpha());
    assert!(a.alpha().iter().all(|&x| x > 0.0 && x < 1.0));
}

#[test]
fn adversarial_examples() {
    let f = AdversarialInstance::plain(30, 2, 3).unwrap();
    assert_eq!(adversarial_eval(&f, &elements(0u32..4)), 4.0);
    let a = Element(9);
    let g = AdversarialInstance::hidden(30, 2, 3, a).unwrap();
    assert_eq!(adversarial_eval(&g, &[a]), 6.0);
    assert_eq!(adversarial_eval(&g, &elements([1u32, 2])), 2.0);
    // agreement on large sets and on sets avoiding a
    for set in [elements(0u32..6), elements(5u32..12), elements(10u32..14)] {
        assert_eq!(adversarial_eval(&f, &set), adversarial_eval(&g, &set));
    }
}

// single-pass algorithms

#[test]
fn block_step_examples() {
    let g = star();
    let f = MaxCover::new(&g);
    let mut qs = QuickStream::new(&f, QuickStreamConfig::new(2, 1, 0.1)).unwrap();
    qs.process_block(&elements([1u32])).unwrap();
    assert_eq!(qs.buffer_value(), 2.0);
    qs.process_block(&elements([2u32])).unwrap();
    assert_eq!(qs.buffer_value(), 3.0);
    qs.process_block(&elements([3u32])).unwrap();
    assert_eq!(qs.buffer().to_vec(), elements([1u32, 2]));
    assert!(QuickStream::new(&f, QuickStreamConfig::new(1, 1, 0.1)).is_err());
}

#[test]
fn finalize_examples() {
    // c = 1: the last k elements, one final query
    let f = Modular::new(vec![1.0, 2.0, 4.0, 8.0]);
    let run = run_quickstream(&f, &elements(0u32..4), QuickStreamConfig::new(2, 1, 0.1)).unwrap();
    assert_eq!(run.outcome.solution.to_vec(), elements([2u32, 3]));
    assert_eq!(run.outcome.ledger.queries(), 4 + 1);

    // c = 2, |A'| = 2k: two chunks, two queries
    let f = Modular::new(vec![1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0]);
    let run = run_quickstream(&f, &elements(0u32..8), QuickStreamConfig::new(2, 2, 0.1)).unwrap();
    assert_eq!(run.outcome.ledger.queries(), 4 + 2);
    assert_eq!(run.outcome.solution.to_vec(), elements([6u32, 7]));

    // star: {a, b} with value 3 against OPT 4
    let g = star();
    let f = MaxCover::new(&g);
    let run = run_quickstream(
        &f,
        &elements([1u32, 2, 3, 0]),
        QuickStreamConfig::new(2, 1, 0.1),
    )
    .unwrap();
    assert_eq!(run.outcome.value, 3.0);
    let opt = brute_force_opt(&f, 2).unwrap().1;
    assert!(run.outcome.value / opt >= 0.25 - 0.1);

    let empty = run_quickstream(&f, &[], QuickStreamConfig::new(2, 1, 0.1)).unwrap();
    assert!(empty.outcome.solution.is_empty());
}

#[test]
fn bound_arithmetic() {
    assert_eq!(query_bound(875_713, 1), 875_714);
    assert_eq!(query_bound(100, 16), 23);
    assert_eq!(ell(0.1), 5);
    assert_eq!(qstream::quickstream::buffer_limit(1, 2, ell(0.1)), 30.0);
}

#[test]
fn singleton_examples() {
    let f = Modular::new(vec![1.0, 5.0, 3.0, 2.0]);
    let run = run_quicksingleton(&f, &elements(0u32..4), 2).unwrap();
    assert_eq!(run.value, 5.0);
    let run = run_quicksingleton(&f, &elements(0u32..4), 1).unwrap();
    assert_eq!(run.solution.to_vec(), elements([1u32]));
    let flat = Modular::new(vec![3.0; 4]);
    let run = run_quicksingleton(&flat, &elements(0u32..4), 2).unwrap();
    assert_eq!(run.solution.to_vec(), elements([0u32]));
}

#[test]
fn largek_examples() {
    let g = qstream::objectives::generate::gnm(1000, 5000, 8);
    let f = MaxCover::new(&g);
    let order: Vec<_> = g.nodes().collect();
    let run = run_quickstream_largek(&f, &order, &LargeKConfig::new(20, 4)).unwrap();
    assert!(run.outcome.ledger.queries() <= 250);
    assert!(run.outcome.solution.len() <= 20);
    assert!(run_quickstream_largek(&f, &order, &LargeKConfig::new(2, 1)).is_err());
}

#[test]
fn dispatch_examples() {
    assert_eq!(select_route(1, 5).unwrap(), Route::Singleton);
    assert_eq!(select_route(2, 1).unwrap(), Route::Stream);
    assert_eq!(select_route(3, 1).unwrap(), Route::LargeK);
    let f = Modular::new(vec![1.0, 2.0, 3.0]);
    assert_eq!(
        dispatch(&f, &elements(0u32..3), 3, 1, 0.1).unwrap().route,
        Route::LargeK
    );
}

// boosting

#[test]
fn boostratio_examples() {
    let g = star();
    let f = MaxCover::new(&g);
    let run = run_boostratio(&f, &BoostParams::new(3.0, 0.25, 0.1, 2), &elements(0u32..4)).unwrap();
    assert_eq!(run.outcome.value, 4.0);
    assert_eq!(run.outcome.solution.to_vec(), elements([0u32]));
    assert_eq!(pass_bound(0.25, 0.1), 29);
    let zero =
        run_boostratio(&f, &BoostParams::new(0.0, 0.25, 0.1, 2), &elements(0u32..4)).unwrap();
    assert!(zero.outcome.solution.is_empty());
    assert_eq!(zero.outcome.ledger.queries(), 0);
}

#[test]
fn composition_examples() {
    let g = star();
    let f = MaxCover::new(&g);
    let run = run_qs_br(&f, &elements([1u32, 2, 3, 0]), 2, 0.1).unwrap();
    assert!(run.outcome.ledger.passes() <= 30);
    assert!(run.outcome.value >= run.feed_value);
    assert!((delta_ratio(1, 0.1) - 1.0 / 12.1).abs() < 1e-15);

    let big = qstream::objectives::generate::barabasi_albert(2000, 5, 1);
    let f = MaxCover::new(&big);
    let order: Vec<_> = big.nodes().collect();
    let run = run_qs_plus_plus(&f, &order, 20, 4, 0.1, 0.4).unwrap();
    assert!(run.outcome.ledger.queries() < 2 * 2000);
    assert!(run.boost_ground <= 2000);
    assert_eq!(run.outcome.ledger.passes(), 1);
}

// baselines

#[test]
fn greedy_examples() {
    let g = star();
    let f = MaxCover::new(&g);
    let run = run_greedy(&f, 1, false).unwrap();
    assert_eq!((run.solution.to_vec(), run.value), (elements([0u32]), 4.0));
    let m = Modular::new(vec![4.0, 1.0, 3.0, 2.0]);
    assert_eq!(run_greedy(&m, 2, true).unwrap().value, 7.0);
}

#[test]
fn stochastic_greedy_examples() {
    assert_eq!(sample_size(1000, 10, 0.1), 231);
    let g = qstream::objectives::generate::gnm(200, 600, 1);
    let f = MaxCover::new(&g);
    let a = run_stochastic_greedy(&f, 5, 0.1, 42).unwrap();
    let b = run_stochastic_greedy(&f, 5, 0.1, 42).unwrap();
    assert_eq!(a.solution, b.solution);
    let full = run_stochastic_greedy(&f, 5, 1e-9, 0).unwrap();
    assert_eq!(full.solution, run_greedy(&f, 5, false).unwrap().solution);
}

// harness

#[test]
fn adversarial_rate_examples() {
    let r = adversarial_trials(Algorithm::Qs, 10_000, 2, 5, 0, 1).unwrap();
    assert_eq!(r.rate, 0.0);
    let r = adversarial_trials(Algorithm::Qs, 10_000, 2, 5, 300, 1).unwrap();
    assert!(r.within_bound(), "{r:?}");
}
