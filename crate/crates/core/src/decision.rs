//! Irreducibility of `X_I(w)` decided on `(W, S, π)`.
//!
//! `X_I(w)` is irreducible exactly when `W_I w` lies in no proper standard
//! parabolic subgroup `W_J` with `π(J) = J`. Since `W_I w ⊆ W_J` iff
//! `I ∪ supp(w) ⊆ J`, the smallest such `J` is the union of the `π`-orbits
//! meeting `I ∪ supp(w)`.
//!
//! When the variety is reducible with closure `J`, truncation to parabolics of
//! type `J` maps it onto the finitely many F-rational parabolics of type `J`,
//! and each fibre is the irreducible variety attached to the Levi factor. The
//! number of components is therefore the number of F-rational parabolics of
//! type `J`: the sum of `q^ℓ(x)` over the `π`-fixed minimal coset
//! representatives `x ∈ W^J`. This count is derived here rather than quoted,
//! and records carry `derived = true`.

use serde::{Deserialize, Serialize};

use crate::coxeter::{CoxeterSystem, Element, GenSet};
use crate::error::Result;
use crate::parabolic::{
    double_coset_elements, max_double_coset_element, min_coset_reps, min_double_coset_rep,
};
use crate::poly::QPoly;
use crate::twist::Twist;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrredVerdict {
    pub irreducible: bool,
    /// Smallest F-stable `J` with `W_I w ⊆ W_J`.
    pub closure: GenSet,
    /// The proper F-stable `J` that obstructs irreducibility.
    pub witness: Option<GenSet>,
    pub component_poly: QPoly,
    /// The component count is a derived corollary, not a quoted result.
    pub derived: bool,
}

/// Orbits of `π` on `S`, each sorted, ordered by smallest element.
pub fn f_orbits(twist: &Twist) -> Vec<GenSet> {
    let perm = twist.permutation();
    let mut seen = GenSet::empty();
    let mut out = Vec::new();
    for s in 0..perm.len() {
        if seen.contains(s) {
            continue;
        }
        let mut orbit = GenSet::empty();
        let mut t = s;
        while !orbit.contains(t) {
            orbit.insert(t);
            t = perm[t];
        }
        seen = seen.union(orbit);
        out.push(orbit);
    }
    out
}

/// Smallest `π`-stable set containing `set`.
pub fn stable_closure(twist: &Twist, set: GenSet) -> GenSet {
    f_orbits(twist)
        .into_iter()
        .filter(|o| !o.intersection(set).is_empty())
        .fold(GenSet::empty(), GenSet::union)
}

/// Union of the `π`-orbits meeting `I ∪ supp(w)`.
pub fn f_closure(sys: &CoxeterSystem, left: GenSet, w: &Element, twist: &Twist) -> Result<GenSet> {
    twist.check_rank(sys)?;
    Ok(stable_closure(twist, left.union(sys.support(w))))
}

pub fn decide_irreducible(
    sys: &CoxeterSystem,
    left: GenSet,
    w: &Element,
    twist: &Twist,
) -> Result<IrredVerdict> {
    let closure = f_closure(sys, left, w, twist)?;
    let irreducible = closure == sys.all_generators();
    let component_poly = if irreducible {
        QPoly::one()
    } else {
        rational_parabolic_count(sys, closure, twist)?
    };
    Ok(IrredVerdict {
        irreducible,
        closure,
        witness: (!irreducible).then_some(closure),
        component_poly,
        derived: true,
    })
}

/// How [`coset_closure`] reaches the double coset `W_I w W_{π(I)}`.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Default)]
pub enum CosetRoute {
    /// Union of supports over every element of the double coset.
    Enumerate,
    /// Support of the maximal element, which dominates the whole coset in
    /// Bruhat order and therefore contains every support.
    #[default]
    ClosedForm,
}

/// Smallest F-stable `J` with `W_I w W_{π(I)} ⊆ W_J`. Agrees with
/// [`f_closure`].
pub fn coset_closure(
    sys: &CoxeterSystem,
    left: GenSet,
    w: &Element,
    twist: &Twist,
    route: CosetRoute,
) -> Result<GenSet> {
    twist.check_rank(sys)?;
    let right = twist.apply_set(left);
    let support = match route {
        CosetRoute::Enumerate => {
            let d = min_double_coset_rep(sys, left, w, right);
            double_coset_elements(sys, left, &d, right)?
                .iter()
                .fold(GenSet::empty(), |acc, x| acc.union(sys.support(x)))
        }
        CosetRoute::ClosedForm => {
            let v = max_double_coset_element(sys, left, w, right)?;
            sys.support(&v).union(left).union(right)
        }
    };
    Ok(stable_closure(twist, support))
}

/// Number of irreducible components of `X_I(w)` as a polynomial in `q`.
pub fn component_count_poly(
    sys: &CoxeterSystem,
    left: GenSet,
    w: &Element,
    twist: &Twist,
) -> Result<QPoly> {
    let closure = f_closure(sys, left, w, twist)?;
    rational_parabolic_count(sys, closure, twist)
}

/// `Σ q^ℓ(x)` over `x ∈ W^J` with `π(x) = x`: the number of F-rational
/// parabolics of the `π`-stable type `J`.
pub fn rational_parabolic_count(
    sys: &CoxeterSystem,
    closure: GenSet,
    twist: &Twist,
) -> Result<QPoly> {
    twist.check_rank(sys)?;
    if closure == sys.all_generators() {
        return Ok(QPoly::one());
    }
    let reps = min_coset_reps(sys, closure)?;
    Ok(QPoly::from_exponents(
        reps.iter()
            .filter(|x| twist.apply(sys, x) == **x)
            .map(Element::length),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(ty: &str, tw: &str) -> (CoxeterSystem, Twist) {
        let sys = CoxeterSystem::parse(ty).unwrap();
        let t = Twist::parse(tw, &sys).unwrap();
        (sys, t)
    }

    #[test]
    fn orbit_examples() {
        let (_, t) = setup("A2", "id");
        assert_eq!(f_orbits(&t), vec![GenSet::single(0), GenSet::single(1)]);
        let (_, t) = setup("A2", "2A2");
        assert_eq!(f_orbits(&t), vec![GenSet::full(2)]);
        let (_, t) = setup("D4", "3D4");
        let labels: Vec<Vec<usize>> = f_orbits(&t).iter().map(|o| o.labels()).collect();
        assert_eq!(labels, vec![vec![1, 3, 4], vec![2]]);
    }

    #[test]
    fn closure_examples() {
        let (sys, id) = setup("A2", "id");
        let e = GenSet::empty();
        assert_eq!(f_closure(&sys, e, &sys.identity(), &id).unwrap(), e);
        let s1 = sys.generator(0).unwrap();
        assert_eq!(f_closure(&sys, e, &s1, &id).unwrap(), GenSet::single(0));
        let (sys, tw) = setup("A2", "2A2");
        let s1 = sys.generator(0).unwrap();
        assert_eq!(f_closure(&sys, e, &s1, &tw).unwrap(), GenSet::full(2));
    }

    #[test]
    fn decision_examples() {
        let (sys, id) = setup("A2", "id");
        let e = GenSet::empty();
        let cox = sys.parse_word("1 2").unwrap();
        let v = decide_irreducible(&sys, e, &cox, &id).unwrap();
        assert!(v.irreducible && v.component_poly.is_one() && v.witness.is_none());

        let v = decide_irreducible(&sys, e, &sys.identity(), &id).unwrap();
        assert!(!v.irreducible);
        assert_eq!(v.closure, e);
        assert_eq!(v.witness, Some(e));

        let v = decide_irreducible(&sys, GenSet::single(0), &sys.identity(), &id).unwrap();
        assert!(!v.irreducible);
        assert_eq!(v.closure, GenSet::single(0));

        let (sys, tw) = setup("A2", "2A2");
        let s1 = sys.generator(0).unwrap();
        assert!(decide_irreducible(&sys, e, &s1, &tw).unwrap().irreducible);
    }

    #[test]
    fn rank_zero_is_irreducible() {
        let sys = CoxeterSystem::from_matrix(vec![]).unwrap();
        let t = Twist::untwisted(&sys);
        let v = decide_irreducible(&sys, GenSet::empty(), &sys.identity(), &t).unwrap();
        assert!(v.irreducible);
        assert!(v.component_poly.is_one());
    }

    #[test]
    fn coset_closure_examples() {
        let (sys, id) = setup("A2", "id");
        let s2 = sys.generator(1).unwrap();
        for route in [CosetRoute::Enumerate, CosetRoute::ClosedForm] {
            assert_eq!(
                coset_closure(&sys, GenSet::single(0), &s2, &id, route).unwrap(),
                GenSet::full(2)
            );
            assert_eq!(
                coset_closure(&sys, GenSet::empty(), &s2, &id, route).unwrap(),
                f_closure(&sys, GenSet::empty(), &s2, &id).unwrap()
            );
        }
        let (sys, id) = setup("B2", "id");
        for route in [CosetRoute::Enumerate, CosetRoute::ClosedForm] {
            assert_eq!(
                coset_closure(&sys, GenSet::single(0), &sys.identity(), &id, route).unwrap(),
                GenSet::single(0)
            );
        }
    }

    #[test]
    fn component_poly_examples() {
        let (sys, id) = setup("A2", "id");
        let e = GenSet::empty();
        let cox = sys.parse_word("1 2").unwrap();
        assert!(component_count_poly(&sys, e, &cox, &id).unwrap().is_one());
        assert_eq!(
            component_count_poly(&sys, e, &sys.identity(), &id)
                .unwrap()
                .coeffs(),
            &[1, 2, 2, 1]
        );
        let s1 = sys.generator(0).unwrap();
        assert_eq!(
            component_count_poly(&sys, e, &s1, &id).unwrap().coeffs(),
            &[1, 1, 1]
        );

        let (sys, tw) = setup("B2", "2B2");
        assert_eq!(
            component_count_poly(&sys, e, &sys.identity(), &tw)
                .unwrap()
                .coeffs(),
            &[1, 0, 0, 0, 1]
        );
    }

    #[test]
    fn twist_rank_mismatch_is_an_error() {
        let (a2, _) = setup("A2", "id");
        let (_, t3) = setup("A3", "2A3");
        assert!(f_closure(&a2, GenSet::empty(), &a2.identity(), &t3).is_err());
    }
}
