mod common;

use common::setup;
use dlirred_core::parabolic::min_coset_reps;
use dlirred_core::{component_count_poly, f_closure, CoxeterSystem, Element, GenSet, Word};
use proptest::prelude::*;

const TYPES: &[&str] = &["A3", "B3", "G2", "D4", "A1xB2"];

fn build(idx: usize, words: Vec<Vec<usize>>) -> (CoxeterSystem, Vec<Element>) {
    let sys = CoxeterSystem::parse(TYPES[idx]).unwrap();
    let r = sys.rank();
    let elems = words
        .into_iter()
        .map(|w| {
            sys.from_word(&Word(w.into_iter().filter(|&s| s < r).collect()))
                .unwrap()
        })
        .collect();
    (sys, elems)
}

fn with_words(n: usize) -> impl Strategy<Value = (usize, Vec<Vec<usize>>)> {
    (
        0..TYPES.len(),
        prop::collection::vec(prop::collection::vec(0usize..4, 0..16), n),
    )
}

proptest! {
    #[test]
    fn length_complements_longest((idx, words) in with_words(1)) {
        let (sys, ws) = build(idx, words);
        let w = &ws[0];
        let w0 = sys.longest_element(sys.all_generators());
        let ww0 = sys.multiply(w, &w0).unwrap();
        prop_assert_eq!(w.length() + ww0.length(), w0.length());
    }

    #[test]
    fn inverse_and_reduced_word((idx, words) in with_words(1)) {
        let (sys, ws) = build(idx, words);
        let w = &ws[0];
        let inv = sys.inverse(w).unwrap();
        prop_assert!(sys.multiply(w, &inv).unwrap().is_identity());
        prop_assert_eq!(inv.length(), w.length());
        let word = sys.reduced_word(w);
        prop_assert_eq!(word.len(), w.length());
        prop_assert_eq!(&sys.from_word(&word).unwrap(), w);
    }

    #[test]
    fn bruhat_reverses_under_w0((idx, words) in with_words(2)) {
        let (sys, ws) = build(idx, words);
        let w0 = sys.longest_element(sys.all_generators());
        let (u, v) = (&ws[0], &ws[1]);
        let a = sys.bruhat_leq(u, v).unwrap();
        let b = sys.bruhat_leq(&sys.multiply(&w0, v).unwrap(), &sys.multiply(&w0, u).unwrap()).unwrap();
        prop_assert_eq!(a, b);
        prop_assert_eq!(a, sys.bruhat_leq(&sys.inverse(u).unwrap(), &sys.inverse(v).unwrap()).unwrap());
    }

    #[test]
    fn closure_is_monotone_and_stable(
        idx in 0usize..10,
        bits in any::<u64>(),
        extra in any::<u64>(),
        word in prop::collection::vec(0usize..4, 0..12),
    ) {
        let (ty, tw) = common::DECISION_GRID[idx];
        let (sys, twist) = setup(ty, tw);
        let r = sys.rank();
        let mask = (1u64 << r) - 1;
        let i = GenSet::from_bits(bits & mask);
        let bigger = i.union(GenSet::from_bits(extra & mask));
        let w = sys.from_word(&Word(word.into_iter().filter(|&s| s < r).collect())).unwrap();
        let c = f_closure(&sys, i, &w, &twist).unwrap();
        prop_assert!(twist.is_stable(c));
        prop_assert!(i.union(sys.support(&w)).is_subset(c));
        prop_assert!(c.is_subset(f_closure(&sys, bigger, &w, &twist).unwrap()));
        // π-equivariance: the closure of π(I), π(w) is the same stable set
        let pw = twist.apply(&sys, &w);
        prop_assert_eq!(f_closure(&sys, twist.apply_set(i), &pw, &twist).unwrap(), c);
        // polynomial at q = 1 counts π-fixed minimal coset representatives
        let poly = component_count_poly(&sys, i, &w, &twist).unwrap();
        let fixed = if c == sys.all_generators() {
            1
        } else {
            min_coset_reps(&sys, c).unwrap().iter().filter(|x| twist.apply(&sys, x) == **x).count()
        };
        prop_assert_eq!(poly.eval(1), fixed as u128);
    }
}
