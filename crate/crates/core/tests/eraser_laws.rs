mod common;

use common::strategies::*;
use proptest::prelude::*;
use selective_eraser::{
    apply_pipeline, parse_query, AtomicEraser, Eraser, EraserExpr, KeepSet, Pipeline, Query,
    SemanticsMode, TokenizerConfig,
};

fn atomic() -> impl Strategy<Value = AtomicEraser> {
    (term(), 0usize..=6).prop_map(|(t, w)| AtomicEraser::new(t, w))
}

/// A reachable document state: the pristine document after some pipeline.
fn state() -> impl Strategy<Value = (selective_eraser::Document, SemanticsMode)> {
    (doc(), steps(), mode()).prop_map(|(d, s, m)| (apply_pipeline(&s, &d, m), m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn atomic_erasers_are_idempotent((d, mode) in state(), e in atomic()) {
        let once = e.apply(&d, mode);
        let twice = e.apply(&once, mode);
        prop_assert_eq!(once.mask(), twice.mask());
    }

    #[test]
    fn erasure_is_monotone((d, mode) in state(), e in expr()) {
        let out = e.apply(&d, mode);
        prop_assert!(out.alive_count() <= d.alive_count());
        for p in out.alive_positions() {
            prop_assert!(d.is_alive(p));
        }
    }

    #[test]
    fn alive_anchors_survive((d, _) in state(), e in atomic()) {
        let out = e.apply(&d, SemanticsMode::Dynamic);
        for p in d.alive_positions().filter(|&p| d.tokens()[p] == e.term()) {
            prop_assert!(out.is_alive(p));
        }
    }

    #[test]
    fn static_mode_commutes(d in doc(), a in expr(), b in expr()) {
        let ab = apply_pipeline(&[a.clone(), b.clone()], &d, SemanticsMode::Static);
        let ba = apply_pipeline(&[b, a], &d, SemanticsMode::Static);
        prop_assert_eq!(ab.mask(), ba.mask());
    }

    #[test]
    fn wider_window_dominates_same_center((d, mode) in state(), t in term(), w in 0usize..=6, k in 0usize..=6) {
        let narrow = AtomicEraser::new(t.clone(), w);
        let wide = AtomicEraser::new(t, w + k);
        let after = narrow.apply(&wide.apply(&d, mode), mode);
        let alone = narrow.apply(&d, mode);
        prop_assert_eq!(after.mask(), alone.mask());
    }

    #[test]
    fn keep_sets_stay_in_range(d in doc(), e in atomic(), mode in mode()) {
        let k = e.keep_set(&d, mode);
        prop_assert_eq!(k.universe(), d.len());
        prop_assert!(k.positions().all(|p| p < d.len()));
        let expected = common::scan_window(d.tokens(), e.term(), e.halfwidth());
        prop_assert_eq!(k.positions().collect::<Vec<_>>(), expected);
    }

    #[test]
    fn composite_keep_set_laws((d, mode) in state(), a in expr(), b in expr()) {
        let ka = a.keep_set(&d, mode);
        let join = (a.clone() | b.clone()).keep_set(&d, mode);
        let meet = (a.clone() & b.clone()).keep_set(&d, mode);
        prop_assert!(ka.is_subset(&join));
        prop_assert!(meet.is_subset(&ka));

        let lhs = (!(a.clone() | b.clone())).keep_set(&d, mode);
        let rhs = (!a.clone() & !b.clone()).keep_set(&d, mode);
        prop_assert_eq!(lhs, rhs);
        let lhs = (!(a.clone() & b.clone())).keep_set(&d, mode);
        let rhs = (!a | !b).keep_set(&d, mode);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn double_complement_on_pristine(d in doc(), a in expr(), mode in mode()) {
        prop_assert_eq!((!!a.clone()).keep_set(&d, mode), a.keep_set(&d, mode));
    }

    #[test]
    fn static_expressions_are_idempotent((d, _) in state(), e in expr()) {
        let once = e.apply(&d, SemanticsMode::Static);
        let twice = e.apply(&once, SemanticsMode::Static);
        prop_assert_eq!(once.mask(), twice.mask());
    }

    #[test]
    fn format_then_parse_round_trips(first in expr(), rest in proptest::collection::vec(expr(), 0..=2)) {
        let cfg = TokenizerConfig::default();
        let mut steps = vec![first];
        steps.extend(rest);
        let q = Query::from_pipeline(Pipeline::new(steps).unwrap());
        prop_assert_eq!(parse_query(&q.to_string(), &cfg).unwrap(), q);
    }
}

#[test]
fn keep_set_universe_matches_document() {
    let d = TokenizerConfig::default().tokenize("h", common::HAMLET);
    let k = EraserExpr::atom("is", 2).keep_set(&d, SemanticsMode::Dynamic);
    assert_eq!(k, KeepSet::from_positions(10, 5..10));
}
