//! The automorphism `π` of `(W, S)` induced by a Frobenius-type endomorphism.
//!
//! Named twists use Bourbaki numbering:
//!
//! | spec    | π on labels                     | δ |
//! |---------|---------------------------------|---|
//! | `id`    | identity                        | 1 |
//! | `2An`   | `i ↦ n + 1 − i`                 | 2 |
//! | `2Dn`   | swaps `n − 1` and `n`           | 2 |
//! | `3D4`   | `1 → 3 → 4 → 1`, fixes `2`      | 3 |
//! | `2E6`   | `1 ↔ 6`, `3 ↔ 5`, fixes `2, 4`  | 2 |
//! | `2B2`   | `1 ↔ 2`                         | 2 |
//! | `2G2`   | `1 ↔ 2`                         | 2 |
//! | `2F4`   | `1 ↔ 4`, `2 ↔ 3`                | 2 |
//! | `swap(i,j)` | exchanges factors `i` and `j` of a product | 2 |
//!
//! For the exotic kinds (`2B2`, `2G2`, `2F4`) the formal variable `q` in
//! component-count polynomials stands for `p^((2m+1)/2)`; it is never
//! specialised.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coxeter::{CartanType, CoxeterSystem, Element, GenSet};
use crate::error::{Error, ParseError, Result};

#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TwistKind {
    Untwisted,
    /// Graph automorphism composed with a Frobenius, including permutations of
    /// isomorphic factors.
    Graph,
    /// Suzuki and Ree endomorphisms.
    Exotic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Twist {
    perm: Vec<usize>,
    kind: TwistKind,
    delta: usize,
    name: String,
}

impl Twist {
    pub fn untwisted(sys: &CoxeterSystem) -> Twist {
        Twist {
            perm: (0..sys.rank()).collect(),
            kind: TwistKind::Untwisted,
            delta: 1,
            name: "id".into(),
        }
    }

    /// Any permutation of `S` preserving the Coxeter matrix. `δ` is its order.
    pub fn from_permutation(sys: &CoxeterSystem, perm: Vec<usize>, name: &str) -> Result<Twist> {
        let kind = if perm.iter().enumerate().all(|(i, &p)| i == p) {
            TwistKind::Untwisted
        } else {
            TwistKind::Graph
        };
        Twist::checked(sys, perm, kind, name)
    }

    fn checked(
        sys: &CoxeterSystem,
        perm: Vec<usize>,
        kind: TwistKind,
        name: &str,
    ) -> Result<Twist> {
        let invalid = |reason: String| Error::InvalidTwist {
            twist: name.to_string(),
            reason,
        };
        let r = sys.rank();
        if perm.len() != r {
            return Err(invalid(format!(
                "permutation has {} entries, rank is {r}",
                perm.len()
            )));
        }
        let mut hit = vec![false; r];
        for &p in &perm {
            if p >= r || std::mem::replace(&mut hit[p], true) {
                return Err(invalid("not a permutation of the generators".into()));
            }
        }
        for s in 0..r {
            for t in 0..r {
                if sys.m(perm[s], perm[t]) != sys.m(s, t) {
                    return Err(invalid(format!(
                        "does not preserve m({},{}) = {}",
                        s + 1,
                        t + 1,
                        sys.m(s, t)
                    )));
                }
            }
        }
        let mut delta = 1;
        let mut power = perm.clone();
        while power.iter().enumerate().any(|(i, &p)| i != p) {
            power = power.iter().map(|&p| perm[p]).collect();
            delta += 1;
        }
        if kind == TwistKind::Exotic {
            // F² is a Frobenius; F itself acts through the order-two swap
            delta = delta.max(2);
        }
        Ok(Twist {
            perm,
            kind,
            delta,
            name: name.to_string(),
        })
    }

    /// Parses a twist specification against `sys`.
    pub fn parse(spec: &str, sys: &CoxeterSystem) -> Result<Twist> {
        let trimmed = spec.trim();
        let lead = spec.len() - spec.trim_start().len();
        if trimmed.is_empty() || trimmed.eq_ignore_ascii_case("id") {
            return Ok(Twist::untwisted(sys));
        }
        if let Some(rest) = trimmed.strip_prefix("swap(") {
            let body = rest
                .strip_suffix(')')
                .ok_or_else(|| ParseError::new(spec, spec.trim_end().len(), "expected ')'"))?;
            let parts: Vec<&str> = body.split(',').collect();
            if parts.len() != 2 {
                return Err(ParseError::new(spec, lead + 5, "expected two factor indices").into());
            }
            let mut idx = [0usize; 2];
            let mut offset = lead + 5;
            for (k, part) in parts.iter().enumerate() {
                let pos = offset + (part.len() - part.trim_start().len());
                idx[k] = part
                    .trim()
                    .parse::<usize>()
                    .ok()
                    .filter(|&i| i >= 1 && i <= sys.components().len())
                    .ok_or_else(|| {
                        ParseError::new(
                            spec,
                            pos,
                            format!("expected a factor index in 1..={}", sys.components().len()),
                        )
                    })?;
                offset += part.len() + 1;
            }
            return Twist::swap_factors(sys, idx[0] - 1, idx[1] - 1, trimmed);
        }

        let bytes = trimmed.as_bytes();
        let order =
            match bytes.first() {
                Some(b'2') => 2,
                Some(b'3') => 3,
                _ => return Err(ParseError::new(
                    spec,
                    lead,
                    "unknown twist; expected id, 2An, 2Dn, 3D4, 2E6, 2B2, 2G2, 2F4 or swap(i,j)",
                )
                .into()),
            };
        let ty = crate::coxeter::parse_type_list(&trimmed[1..])
            .map_err(|e| ParseError::new(spec, lead + 1 + e.position, e.message))?;
        let [ty] = ty.as_slice() else {
            return Err(ParseError::new(
                spec,
                lead + 1,
                "a named twist takes a single Cartan type",
            )
            .into());
        };
        let comps = sys.components();
        let matches_type = comps.len() == 1
            && (comps[0].cartan == *ty
                || matches!((comps[0].cartan, *ty), (CartanType::B(a), CartanType::C(b)) | (CartanType::C(a), CartanType::B(b)) if a == b));
        if !matches_type {
            return Err(Error::InvalidTwist {
                twist: trimmed.to_string(),
                reason: format!("group is {}, not {ty}", sys.label()),
            });
        }
        let n = ty.rank();
        // permutation in Bourbaki labels (0-based)
        let (local, kind): (Vec<usize>, TwistKind) = match (order, *ty) {
            (2, CartanType::A(n)) if n >= 2 => ((0..n).rev().collect(), TwistKind::Graph),
            (2, CartanType::D(n)) => {
                let mut p: Vec<usize> = (0..n).collect();
                p.swap(n - 2, n - 1);
                (p, TwistKind::Graph)
            }
            (3, CartanType::D(4)) => (vec![2, 1, 3, 0], TwistKind::Graph),
            (2, CartanType::E(6)) => (vec![5, 1, 4, 3, 2, 0], TwistKind::Graph),
            (2, CartanType::B(2)) | (2, CartanType::C(2)) | (2, CartanType::G2) => {
                (vec![1, 0], TwistKind::Exotic)
            }
            (2, CartanType::F4) => (vec![3, 2, 1, 0], TwistKind::Exotic),
            _ => {
                return Err(Error::InvalidTwist {
                    twist: trimmed.to_string(),
                    reason: format!("no twist of order {order} on {ty}"),
                })
            }
        };
        debug_assert_eq!(local.len(), n);
        let gens = &comps[0].generators;
        let mut perm: Vec<usize> = (0..sys.rank()).collect();
        for (a, &b) in local.iter().enumerate() {
            perm[gens[a]] = gens[b];
        }
        Twist::checked(sys, perm, kind, trimmed)
    }

    /// Exchanges two isomorphic factors, matching generators in Bourbaki order.
    pub fn swap_factors(sys: &CoxeterSystem, a: usize, b: usize, name: &str) -> Result<Twist> {
        let comps = sys.components();
        let (ca, cb) = (&comps[a], &comps[b]);
        if a == b
            || ca.cartan.rank() != cb.cartan.rank()
            || ca.generators.len() != cb.generators.len()
        {
            return Err(Error::InvalidTwist {
                twist: name.to_string(),
                reason: format!("factors {} and {} are not isomorphic", a + 1, b + 1),
            });
        }
        let mut perm: Vec<usize> = (0..sys.rank()).collect();
        for (&x, &y) in ca.generators.iter().zip(&cb.generators) {
            perm[x] = y;
            perm[y] = x;
        }
        Twist::checked(sys, perm, TwistKind::Graph, name)
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn kind(&self) -> TwistKind {
        self.kind
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    /// Meaning of the formal variable `q` for this twist.
    pub fn q_semantics(&self) -> &'static str {
        match self.kind {
            TwistKind::Exotic => "q = p^((2m+1)/2); q^2 is the field size of F^2",
            _ => "q = size of the field of definition",
        }
    }

    pub fn apply_set(&self, set: GenSet) -> GenSet {
        set.map(&self.perm)
    }

    pub fn apply(&self, sys: &CoxeterSystem, w: &Element) -> Element {
        sys.apply_generator_map(w, &self.perm)
    }

    pub fn is_stable(&self, set: GenSet) -> bool {
        self.apply_set(set) == set
    }

    pub(crate) fn check_rank(&self, sys: &CoxeterSystem) -> Result<()> {
        if self.perm.len() != sys.rank() {
            return Err(Error::InvalidTwist {
                twist: self.name.clone(),
                reason: format!(
                    "built for rank {}, group has rank {}",
                    self.perm.len(),
                    sys.rank()
                ),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}
