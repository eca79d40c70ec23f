mod common;

use common::strategies::*;
use common::{scan_cooccurrence, scan_count};
use proptest::prelude::*;
use selective_eraser::{
    bag_of_words, cooccurrence, orthogonality_check, term_frequency, CoocQuery,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn term_frequency_matches_scan(d in doc(), t in term()) {
        prop_assert_eq!(term_frequency(&t, &d), scan_count(d.tokens(), &t));
    }

    #[test]
    fn cooccurrence_matches_scan(d in doc(), wide in term(), counted in term(), w in 0usize..=8) {
        let got = cooccurrence(&CoocQuery::new(wide.clone(), counted.clone(), w), &d);
        prop_assert_eq!(got, scan_cooccurrence(d.tokens(), &wide, &counted, w));
    }

    #[test]
    fn bag_of_words_is_complete(d in doc()) {
        let bow = bag_of_words(&d);
        prop_assert_eq!(bow.values().sum::<usize>(), d.len());
        for (t, n) in &bow {
            prop_assert_eq!(*n, scan_count(d.tokens(), t));
        }
    }

    #[test]
    fn full_width_cooccurrence_is_frequency(d in doc(), wide in term(), counted in term()) {
        let got = cooccurrence(&CoocQuery::new(wide.clone(), counted.clone(), d.len()), &d);
        let expected = if scan_count(d.tokens(), &wide) > 0 { term_frequency(&counted, &d) } else { 0 };
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn cooccurrence_grows_with_width(d in doc(), wide in term(), counted in term(), w in 0usize..=8) {
        let narrow = cooccurrence(&CoocQuery::new(wide.clone(), counted.clone(), w), &d);
        let wider = cooccurrence(&CoocQuery::new(wide, counted, w + 1), &d);
        prop_assert!(narrow <= wider);
    }

    #[test]
    fn distinct_zero_width_erasers_are_orthogonal(d in doc(), t1 in term(), t2 in term()) {
        if t1 != t2 {
            prop_assert!(orthogonality_check(&t1, &t2, &d));
        } else {
            prop_assert_eq!(orthogonality_check(&t1, &t2, &d), scan_count(d.tokens(), &t1) == 0);
        }
    }
}
