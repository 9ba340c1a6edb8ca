//! Standard parabolic subgroups and double cosets `W_I d W_J`.

use std::collections::HashSet;

use crate::coxeter::{CoxeterSystem, Element, GenSet};
use crate::error::{Error, Result};
use crate::guard;

/// A double coset `W_I d W_J` stored through its minimal representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DoubleCoset {
    pub left: GenSet,
    pub right: GenSet,
    pub min_rep: Element,
}

impl DoubleCoset {
    pub fn new(sys: &CoxeterSystem, left: GenSet, w: &Element, right: GenSet) -> Self {
        DoubleCoset {
            left,
            right,
            min_rep: min_double_coset_rep(sys, left, w, right),
        }
    }

    pub fn contains(&self, sys: &CoxeterSystem, x: &Element) -> bool {
        min_double_coset_rep(sys, self.left, x, self.right) == self.min_rep
    }
}

/// The unique element of minimal length in `W_I w W_J`.
///
/// Strips left descents in `I` and right descents in `J` until none remain;
/// the only element of the double coset with no such descents is the minimum.
pub fn min_double_coset_rep(
    sys: &CoxeterSystem,
    left: GenSet,
    w: &Element,
    right: GenSet,
) -> Element {
    let mut d = w.clone();
    loop {
        if let Some(s) = left.iter().find(|&s| sys.is_left_descent(&d, s)) {
            d = sys.left_mul_gen(s, &d);
        } else if let Some(s) = right.iter().find(|&s| sys.is_right_descent(&d, s)) {
            d = sys.right_mul_gen(&d, s);
        } else {
            return d;
        }
    }
}

/// `K = J ∩ d⁻¹ I d` for a minimal representative `d`, as a subset of `S`.
pub fn kilmoyer_subset(
    sys: &CoxeterSystem,
    left: GenSet,
    d: &Element,
    right: GenSet,
) -> Result<GenSet> {
    let d_inv = sys.inverse(d)?;
    let mut k = GenSet::empty();
    for s in right.iter() {
        let conj = sys.multiply(&sys.multiply(d, &sys.generator(s)?)?, &d_inv)?;
        // a length-one element is the simple reflection it has as a descent
        if conj.length() == 1 && left.iter().any(|t| sys.is_right_descent(&conj, t)) {
            k.insert(s);
        }
    }
    Ok(k)
}

/// Every element of `W_I d W_J`, sorted by (length, normal-form word).
pub fn double_coset_elements(
    sys: &CoxeterSystem,
    left: GenSet,
    d: &Element,
    right: GenSet,
) -> Result<Vec<Element>> {
    let bound = (sys.parabolic_order(left) * sys.parabolic_order(right)).min(sys.order());
    guard::check("double coset", bound)?;
    let mut seen: HashSet<Element> = HashSet::new();
    let mut list = vec![d.clone()];
    seen.insert(d.clone());
    let mut i = 0;
    while i < list.len() {
        let x = list[i].clone();
        for s in left.iter() {
            let y = sys.left_mul_gen(s, &x);
            if seen.insert(y.clone()) {
                list.push(y);
            }
        }
        for s in right.iter() {
            let y = sys.right_mul_gen(&x, s);
            if seen.insert(y.clone()) {
                list.push(y);
            }
        }
        i += 1;
    }
    sys.sort_elements(&mut list);
    Ok(list)
}

/// The unique element of maximal length in `W_I w W_J`, in closed form
/// `v = w₀(I) · d · w₀(K) · w₀(J)` with `d` minimal and `K = J ∩ d⁻¹ I d`.
///
/// The result is checked to have every generator of `I` as a left descent and
/// every generator of `J` as a right descent, and to have the expected length.
pub fn max_double_coset_element(
    sys: &CoxeterSystem,
    left: GenSet,
    w: &Element,
    right: GenSet,
) -> Result<Element> {
    let d = min_double_coset_rep(sys, left, w, right);
    let k = kilmoyer_subset(sys, left, &d, right)?;
    let w0_i = sys.longest_element(left);
    let w0_j = sys.longest_element(right);
    let w0_k = sys.longest_element(k);
    let v = sys.multiply(&sys.multiply(&w0_i, &d)?, &sys.multiply(&w0_k, &w0_j)?)?;

    let expected = w0_i.length() + d.length() + w0_j.length() - w0_k.length();
    let maximal = left.is_subset(sys.left_descents(&v)) && right.is_subset(sys.right_descents(&v));
    if v.length() != expected || !maximal {
        return Err(Error::Defect(format!(
            "closed-form maximal element for I={left}, J={right}, d={} failed: length {} (expected {expected}), maximal {maximal}, K={k}",
            sys.reduced_word(&d),
            v.length(),
        )));
    }
    if min_double_coset_rep(sys, left, &v, right) != d {
        return Err(Error::Defect(format!(
            "closed-form maximal element left the double coset of {}",
            sys.reduced_word(&d)
        )));
    }
    Ok(v)
}

/// `|W_I d W_J| = |W_I| |W_J| / |W_K|`.
pub fn double_coset_size(
    sys: &CoxeterSystem,
    left: GenSet,
    d: &Element,
    right: GenSet,
) -> Result<u128> {
    let k = kilmoyer_subset(sys, left, d, right)?;
    Ok(sys.parabolic_order(left) * sys.parabolic_order(right) / sys.parabolic_order(k))
}

/// Minimal-length representatives `W^J` of the left cosets `w W_J`, sorted by
/// (length, normal-form word).
pub fn min_coset_reps(sys: &CoxeterSystem, right: GenSet) -> Result<Vec<Element>> {
    guard::check(
        "minimal coset representatives",
        sys.order() / sys.parabolic_order(right),
    )?;
    // W^J is closed under removing a left letter, so grow it by left
    // multiplication from the identity
    let mut seen: HashSet<Element> = HashSet::new();
    let mut list = vec![sys.identity()];
    seen.insert(sys.identity());
    let mut i = 0;
    while i < list.len() {
        let x = list[i].clone();
        for s in 0..sys.rank() {
            if sys.is_left_descent(&x, s) {
                continue;
            }
            let y = sys.left_mul_gen(s, &x);
            if right.iter().any(|t| sys.is_right_descent(&y, t)) {
                continue;
            }
            if seen.insert(y.clone()) {
                list.push(y);
            }
        }
        i += 1;
    }
    sys.sort_elements(&mut list);
    Ok(list)
}

/// Minimal representatives of all double cosets `W_I \ W / W_J`, sorted.
pub fn double_coset_reps(sys: &CoxeterSystem, left: GenSet, right: GenSet) -> Result<Vec<Element>> {
    let mut reps: Vec<Element> = min_coset_reps(sys, right)?
        .into_iter()
        .filter(|x| left.iter().all(|s| !sys.is_left_descent(x, s)))
        .collect();
    sys.sort_elements(&mut reps);
    Ok(reps)
}
