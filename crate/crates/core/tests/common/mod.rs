//! Independent oracles shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use std::collections::HashSet;

use dlirred_core::{CoxeterSystem, Element, GenSet, Twist};

/// `u ≤ v` iff `u` is a subword product of a reduced word of `v`.
pub fn subword_leq(sys: &CoxeterSystem, u: &Element, v: &Element) -> bool {
    let mut reach: HashSet<Element> = HashSet::from([sys.identity()]);
    for s in sys.reduced_word(v).0 {
        let next: Vec<Element> = reach.iter().map(|x| sys.right_mul_gen(x, s)).collect();
        reach.extend(next);
    }
    reach.contains(u)
}

/// Every reduced word of `w`, by peeling right descents.
pub fn all_reduced_words(sys: &CoxeterSystem, w: &Element) -> Vec<Vec<usize>> {
    if w.is_identity() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for s in 0..sys.rank() {
        if sys.is_right_descent(w, s) {
            for mut word in all_reduced_words(sys, &sys.right_mul_gen(w, s)) {
                word.push(s);
                out.push(word);
            }
        }
    }
    out
}

/// Intersection of all `π`-stable `J` with `I ⊆ J` and `w ∈ W_J`, found by
/// testing membership in each `W_J` directly. Also returns whether a proper
/// such `J` exists.
pub fn closure_oracle(
    sys: &CoxeterSystem,
    left: GenSet,
    w: &Element,
    twist: &Twist,
) -> (GenSet, bool) {
    let full = sys.all_generators();
    let mut closure = full;
    let mut proper = false;
    for j in GenSet::all_subsets(sys.rank()) {
        let stable = j.iter().all(|s| j.contains(twist.permutation()[s]));
        if !stable || !left.is_subset(j) {
            continue;
        }
        if sys.parabolic_elements(j).unwrap().contains(w) {
            closure = closure.intersection(j);
            proper |= j != full;
        }
    }
    (closure, proper)
}

/// All of `W_I w W_J` by multiplying out.
pub fn coset_by_products(
    sys: &CoxeterSystem,
    left: GenSet,
    w: &Element,
    right: GenSet,
) -> Vec<Element> {
    let wi = sys.parabolic_elements(left).unwrap();
    let wj = sys.parabolic_elements(right).unwrap();
    let mut set = HashSet::new();
    for a in &wi {
        let aw = sys.multiply(a, w).unwrap();
        for b in &wj {
            set.insert(sys.multiply(&aw, b).unwrap());
        }
    }
    set.into_iter().collect()
}

/// `Σ_w q^ℓ(w)` over `W`.
pub fn poincare_sum(sys: &CoxeterSystem, q: u128) -> u128 {
    sys.elements()
        .unwrap()
        .iter()
        .map(|w| q.pow(w.length() as u32))
        .sum()
}

/// `(type, twist)` pairs of the decision grid.
pub const DECISION_GRID: &[(&str, &str)] = &[
    ("A1", "id"),
    ("A2", "id"),
    ("A3", "id"),
    ("B2", "id"),
    ("B3", "id"),
    ("G2", "id"),
    ("A1xA1", "swap(1,2)"),
    ("A2", "2A2"),
    ("A3", "2A3"),
    ("D4", "3D4"),
];

pub fn setup(ty: &str, tw: &str) -> (CoxeterSystem, Twist) {
    let sys = CoxeterSystem::parse(ty).unwrap();
    let twist = Twist::parse(tw, &sys).unwrap();
    (sys, twist)
}
