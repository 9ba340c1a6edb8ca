mod common;

use common::*;
use dlirred_core::parabolic::{
    double_coset_elements, double_coset_reps, max_double_coset_element, min_coset_reps,
    min_double_coset_rep,
};
use dlirred_core::{
    component_count_poly, coset_closure, decide_irreducible, f_closure, CosetRoute, CoxeterSystem,
    GenSet, QPoly,
};

#[test]
fn decision_matches_membership_oracle_on_grid() {
    for &(ty, tw) in DECISION_GRID {
        let (sys, twist) = setup(ty, tw);
        for w in sys.elements().unwrap() {
            for i in GenSet::all_subsets(sys.rank()) {
                let verdict = decide_irreducible(&sys, i, &w, &twist).unwrap();
                let (closure, proper) = closure_oracle(&sys, i, &w, &twist);
                assert_eq!(
                    verdict.irreducible,
                    !proper,
                    "{ty} {tw} I={i} w={:?}",
                    sys.reduced_word(&w)
                );
                assert_eq!(verdict.closure, closure, "{ty} {tw} I={i}");
                assert!(verdict.derived);
            }
        }
    }
}

#[test]
fn both_coset_routes_agree_with_closure() {
    for &(ty, tw) in DECISION_GRID {
        let (sys, twist) = setup(ty, tw);
        for w in sys.elements().unwrap() {
            for i in GenSet::all_subsets(sys.rank()) {
                let c = f_closure(&sys, i, &w, &twist).unwrap();
                for route in [CosetRoute::Enumerate, CosetRoute::ClosedForm] {
                    assert_eq!(
                        coset_closure(&sys, i, &w, &twist, route).unwrap(),
                        c,
                        "{ty} {tw} I={i}"
                    );
                }
            }
        }
    }
}

#[test]
fn bruhat_matches_subwords() {
    for ty in ["A3", "B3", "G2", "A1xA2"] {
        let sys = CoxeterSystem::parse(ty).unwrap();
        let all = sys.elements().unwrap();
        for u in &all {
            for v in &all {
                assert_eq!(
                    sys.bruhat_leq(u, v).unwrap(),
                    subword_leq(&sys, u, v),
                    "{ty}"
                );
            }
        }
    }
}

#[test]
fn support_is_independent_of_reduced_word() {
    for ty in ["A3", "B3", "G2"] {
        let sys = CoxeterSystem::parse(ty).unwrap();
        for w in sys.elements().unwrap() {
            let words = all_reduced_words(&sys, &w);
            assert!(!words.is_empty());
            for word in &words {
                assert_eq!(word.len(), w.length());
                let letters: GenSet = word.iter().copied().collect();
                assert_eq!(letters, sys.support(&w));
            }
        }
    }
}

#[test]
fn double_cosets_match_products() {
    for ty in ["A2", "A3", "B3", "G2", "A1xA1xA1"] {
        let sys = CoxeterSystem::parse(ty).unwrap();
        for i in GenSet::all_subsets(sys.rank()) {
            for j in GenSet::all_subsets(sys.rank()) {
                let mut total = 0;
                for d in double_coset_reps(&sys, i, j).unwrap() {
                    let mut brute = coset_by_products(&sys, i, &d, j);
                    sys.sort_elements(&mut brute);
                    let listed = double_coset_elements(&sys, i, &d, j).unwrap();
                    assert_eq!(listed, brute);
                    let min = brute.iter().min_by_key(|x| x.length()).unwrap();
                    assert_eq!(&min_double_coset_rep(&sys, i, &d, j), min);
                    let max = brute.iter().max_by_key(|x| x.length()).unwrap();
                    let v = max_double_coset_element(&sys, i, &d, j).unwrap();
                    assert_eq!(&v, max);
                    for x in &brute {
                        assert!(subword_leq(&sys, x, &v));
                    }
                    total += brute.len();
                }
                assert_eq!(total as u128, sys.order());
            }
        }
    }
}

#[test]
fn coset_reps_tile_the_group() {
    for ty in ["A3", "B3", "D4", "F4"] {
        let sys = CoxeterSystem::parse(ty).unwrap();
        for j in GenSet::all_subsets(sys.rank()) {
            let reps = min_coset_reps(&sys, j).unwrap();
            assert_eq!(
                reps.len() as u128 * sys.parabolic_order(j),
                sys.order(),
                "{ty} J={j}"
            );
        }
    }
}

#[test]
fn component_polynomial_examples() {
    let (sys, twist) = setup("A2", "id");
    let s1 = sys.parse_word("1").unwrap();
    assert_eq!(
        component_count_poly(&sys, GenSet::empty(), &s1, &twist).unwrap(),
        QPoly::from_coeffs(vec![1, 1, 1])
    );
    let e = sys.identity();
    // X(1) is the finite set of rational Borels: |G/B| points
    let p = component_count_poly(&sys, GenSet::empty(), &e, &twist).unwrap();
    assert_eq!(p.eval(2), poincare_sum(&sys, 2));
    let (sys, twist) = setup("A2", "2A2");
    let p = component_count_poly(&sys, GenSet::empty(), &sys.identity(), &twist).unwrap();
    // rational Borels of U_3: q^3 + 1
    assert_eq!(p, QPoly::from_coeffs(vec![1, 0, 0, 1]));
}
