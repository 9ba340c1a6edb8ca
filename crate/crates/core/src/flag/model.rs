//! `GL_n` over `F_{q^m}` with a standard or unitary Frobenius, and the
//! Deligne-Lusztig point sets it carries.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::field::FiniteField;
use super::flags::{
    enumerate_flags, flag_count, neighbours, perp_flag, power_map, type_to_dims, PartialFlag,
};
use super::linalg::{inverse, transpose, Matrix};
use super::position::{relative_position, RelativePosition};
use crate::coxeter::{CartanType, CoxeterSystem, Element, GenSet};
use crate::error::{Error, Result};
use crate::guard;
use crate::parabolic::min_double_coset_rep;
use crate::twist::Twist;

/// Largest ambient dimension the model accepts.
pub const MAX_N: usize = 4;

#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FrobeniusKind {
    /// Entrywise `x ↦ x^q`.
    Standard,
    /// `V ↦ (V^(q))^⊥` for the antidiagonal form, dimensions reversed.
    Unitary,
}

/// The Frobenius `F` on flags (and on `GL_n`) for base field size `q`.
#[derive(Debug, Copy, Clone, PartialEq, Eq)]
pub struct FrobeniusMap {
    pub q: usize,
    pub kind: FrobeniusKind,
}

impl FrobeniusMap {
    pub fn apply(&self, field: &FiniteField, flag: &PartialFlag) -> PartialFlag {
        let raised = power_map(field, flag, self.q as u64);
        match self.kind {
            FrobeniusKind::Standard => raised,
            FrobeniusKind::Unitary => perp_flag(field, &raised),
        }
    }

    /// `F(g)`, so that `F(g · V) = F(g) · F(V)`.
    pub fn apply_matrix(&self, field: &FiniteField, g: &Matrix) -> Matrix {
        let raised: Matrix = g
            .iter()
            .map(|row| row.iter().map(|&x| field.pow(x, self.q as u64)).collect())
            .collect();
        match self.kind {
            FrobeniusKind::Standard => raised,
            FrobeniusKind::Unitary => {
                // J (g^(q))^{-T} J with J antidiagonal
                let inv_t = transpose(&inverse(field, &raised).expect("invertible"));
                let n = inv_t.len();
                (0..n)
                    .map(|i| (0..n).map(|j| inv_t[n - 1 - i][n - 1 - j]).collect())
                    .collect()
            }
        }
    }

    /// Induced permutation of the generators of `A_{n−1}` (0-based).
    pub fn type_map(&self, n: usize) -> Vec<usize> {
        let r = n - 1;
        match self.kind {
            FrobeniusKind::Standard => (0..r).collect(),
            FrobeniusKind::Unitary => (0..r).rev().collect(),
        }
    }
}

/// `GL_n` flags over `F_{q^m}` with Frobenius `F`.
#[derive(Debug)]
pub struct FlagModel {
    n: usize,
    m: u32,
    frobenius: FrobeniusMap,
    field: FiniteField,
    sys: CoxeterSystem,
    twist: Twist,
}

impl FlagModel {
    pub fn new(n: usize, q: usize, kind: FrobeniusKind, m: u32) -> Result<FlagModel> {
        if !(2..=MAX_N).contains(&n) {
            return Err(Error::Flag(format!("n = {n} outside 2..={MAX_N}")));
        }
        if m == 0 {
            return Err(Error::Flag("extension degree must be positive".into()));
        }
        super::field::prime_power(q)
            .ok_or_else(|| Error::Flag(format!("q = {q} is not a prime power")))?;
        let size = (q as u128).checked_pow(m).unwrap_or(u128::MAX);
        if size > super::field::MAX_FIELD_SIZE as u128 {
            return Err(Error::SizeGuard {
                what: format!("field F_{q}^{m}"),
                needed: size,
                limit: super::field::MAX_FIELD_SIZE as u128,
            });
        }
        let field = FiniteField::with_order(size as usize)?;
        let sys = CoxeterSystem::from_types(&[CartanType::A(n - 1)])?;
        let frobenius = FrobeniusMap { q, kind };
        let twist = match kind {
            FrobeniusKind::Standard => Twist::untwisted(&sys),
            FrobeniusKind::Unitary => {
                Twist::from_permutation(&sys, frobenius.type_map(n), &format!("2A{}", n - 1))?
            }
        };
        Ok(FlagModel {
            n,
            m,
            frobenius,
            field,
            sys,
            twist,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.frobenius.q
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn frobenius_map(&self) -> FrobeniusMap {
        self.frobenius
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// The Weyl group `A_{n−1}`.
    pub fn system(&self) -> &CoxeterSystem {
        &self.sys
    }

    /// The action of `F` on `(W, S)`.
    pub fn twist(&self) -> &Twist {
        &self.twist
    }

    pub fn flags(&self, parabolic_type: GenSet) -> Result<Vec<PartialFlag>> {
        enumerate_flags(&self.field, self.n, &type_to_dims(self.n, parabolic_type))
    }

    pub fn flag_count(&self, parabolic_type: GenSet) -> u128 {
        flag_count(
            self.n,
            &type_to_dims(self.n, parabolic_type),
            self.field.size() as u128,
        )
    }

    pub fn frobenius(&self, flag: &PartialFlag) -> PartialFlag {
        self.frobenius.apply(&self.field, flag)
    }

    pub fn position(&self, f1: &PartialFlag, f2: &PartialFlag) -> Result<RelativePosition> {
        relative_position(&self.sys, &self.field, f1, f2)
    }

    /// Position of `(f, F(f))`, a double coset `W_I x W_{π(I)}`.
    pub fn dl_position(&self, flag: &PartialFlag) -> Result<RelativePosition> {
        self.position(flag, &self.frobenius(flag))
    }

    /// Points of `X_I(w)` over `F_{q^m}`.
    pub fn dl_points(&self, parabolic_type: GenSet, w: &Element) -> Result<Vec<PartialFlag>> {
        let right = self.twist.apply_set(parabolic_type);
        let target = min_double_coset_rep(&self.sys, parabolic_type, w, right);
        let mut out = Vec::new();
        for flag in self.flags(parabolic_type)? {
            if self.dl_position(&flag)?.min_rep == target {
                out.push(flag);
            }
        }
        Ok(out)
    }

    /// All flags of type `I`, grouped by the double coset of `(f, F(f))`,
    /// keyed by minimal representative and sorted.
    pub fn dl_partition(&self, parabolic_type: GenSet) -> Result<Vec<(Element, Vec<PartialFlag>)>> {
        let mut groups: HashMap<Element, Vec<PartialFlag>> = HashMap::new();
        for flag in self.flags(parabolic_type)? {
            let pos = self.dl_position(&flag)?;
            groups.entry(pos.min_rep).or_default().push(flag);
        }
        let mut out: Vec<(Element, Vec<PartialFlag>)> = groups.into_iter().collect();
        out.sort_by_cached_key(|(w, _)| self.sys.sort_key(w));
        Ok(out)
    }

    /// F-stable flags of type `I` (those defined over `F_{q^m}`).
    pub fn rational_flags(&self, parabolic_type: GenSet) -> Result<Vec<PartialFlag>> {
        Ok(self
            .flags(parabolic_type)?
            .into_iter()
            .filter(|f| self.frobenius(f) == *f)
            .collect())
    }

    fn check_sequence(&self, seq: &[usize]) -> Result<()> {
        if seq.is_empty() {
            return Err(Error::Flag("generator sequence must be non-empty".into()));
        }
        if let Some(&s) = seq.iter().find(|&&s| s >= self.sys.rank()) {
            return Err(Error::GeneratorOutOfRange(s + 1, self.sys.rank()));
        }
        Ok(())
    }

    /// Points of `X̂(s_1, ..., s_n)`: tuples of full flags with consecutive
    /// positions in `{1, s_i}` and `(B_n, F(B_1))` in `{1, s_n}`.
    pub fn hatx_points(&self, seq: &[usize]) -> Result<Vec<Vec<PartialFlag>>> {
        self.check_sequence(seq)?;
        let base = self.flag_count(GenSet::empty());
        let branching = (self.field.size() as u128 + 1).pow(seq.len() as u32 - 1);
        guard::check("compactification tuples", base.saturating_mul(branching))?;
        let last = *seq.last().expect("non-empty");
        let mut out = Vec::new();
        for b1 in self.flags(GenSet::empty())? {
            let fb1 = self.frobenius(&b1);
            let mut partial = vec![vec![b1]];
            for &s in &seq[..seq.len() - 1] {
                let mut next = Vec::new();
                for tuple in partial {
                    let tail = tuple.last().expect("non-empty");
                    for nb in neighbours(&self.field, tail, s) {
                        let mut t = tuple.clone();
                        t.push(nb);
                        next.push(t);
                    }
                }
                partial = next;
            }
            for tuple in partial {
                let tail = tuple.last().expect("non-empty");
                if neighbours(&self.field, tail, last).contains(&fb1) {
                    out.push(tuple);
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Whether a tuple lies in `X̂(seq)`, using relative positions.
    pub fn in_hatx(&self, seq: &[usize], tuple: &[PartialFlag]) -> Result<bool> {
        self.check_sequence(seq)?;
        if tuple.len() != seq.len() {
            return Ok(false);
        }
        let closure_ok = |a: &PartialFlag, b: &PartialFlag, s: usize| -> Result<bool> {
            let w = self.position(a, b)?.min_rep;
            Ok(w.is_identity() || w == self.sys.generator(s)?)
        };
        for i in 0..seq.len() - 1 {
            if !closure_ok(&tuple[i], &tuple[i + 1], seq[i])? {
                return Ok(false);
            }
        }
        closure_ok(
            &tuple[seq.len() - 1],
            &self.frobenius(&tuple[0]),
            seq[seq.len() - 1],
        )
    }

    /// `X̂(s_{i_1}, ..., s_{i_r}) → X̂(s_1, ..., s_n)`: repeat `B_k` up to
    /// position `i_k` and pad the tail with `F(B_1)`. `indices` are 0-based
    /// positions in `target`.
    pub fn subsequence_map_f(
        &self,
        tuple: &[PartialFlag],
        indices: &[usize],
        target: &[usize],
    ) -> Result<Vec<PartialFlag>> {
        self.check_sequence(target)?;
        if indices.is_empty() {
            return Err(Error::Flag("subsequence must be non-empty".into()));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Flag(format!(
                "indices {indices:?} are not strictly increasing"
            )));
        }
        if *indices.last().expect("non-empty") >= target.len() {
            return Err(Error::Flag(format!(
                "index {} beyond target length {}",
                indices.last().expect("non-empty") + 1,
                target.len()
            )));
        }
        if tuple.len() != indices.len() {
            return Err(Error::Flag(format!(
                "tuple has {} flags for {} indices",
                tuple.len(),
                indices.len()
            )));
        }
        let mut out = Vec::with_capacity(target.len());
        let mut k = 0;
        for pos in 0..target.len() {
            if k < indices.len() {
                out.push(tuple[k].clone());
                if pos == indices[k] {
                    k += 1;
                }
            } else {
                out.push(self.frobenius(&tuple[0]));
            }
        }
        Ok(out)
    }
}
