//! Brute force over `GL_n(F_Q)`.

use std::collections::HashSet;

use super::field::{Fe, FiniteField};
use super::flags::{act, column_flag, type_to_dims, PartialFlag};
use super::linalg::{inverse, mat_mul, rank, Matrix};
use super::model::FlagModel;
use super::position::{full_position_perm, perm_to_element, relative_position};
use crate::coxeter::{Element, GenSet};
use crate::error::Result;
use crate::guard;
use crate::parabolic::{double_coset_elements, min_double_coset_rep};

/// `|GL_n(F_Q)| = Π_{i<n} (Q^n − Q^i)`.
pub fn gl_order(n: usize, q: u128) -> u128 {
    (0..n as u32).fold(1u128, |acc, i| {
        acc.saturating_mul(
            q.saturating_pow(n as u32)
                .saturating_sub(q.saturating_pow(i)),
        )
    })
}

fn all_vectors(field: &FiniteField, n: usize) -> Vec<Vec<Fe>> {
    let mut out: Vec<Vec<Fe>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                field.elements().map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Every invertible `n × n` matrix, built column by column.
pub fn gl_elements(field: &FiniteField, n: usize) -> Result<Vec<Matrix>> {
    guard::check("GL_n elements", gl_order(n, field.size() as u128))?;
    let vectors = all_vectors(field, n);
    let mut columns: Vec<Vec<Vec<Fe>>> = vec![Vec::new()];
    for k in 0..n {
        let mut next = Vec::new();
        for cols in columns {
            for v in &vectors {
                let mut c = cols.clone();
                c.push(v.clone());
                if rank(field, c.clone()) == k + 1 {
                    next.push(c);
                }
            }
        }
        columns = next;
    }
    Ok(columns
        .into_iter()
        .map(|cols| {
            (0..n)
                .map(|i| cols.iter().map(|c| c[i]).collect())
                .collect()
        })
        .collect())
}

/// Outcome of comparing `P_I w P_J` with the union of `B x B` over the
/// double coset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellCheck {
    pub holds: bool,
    /// `|P_I w P_J|` as a set of group elements.
    pub cell_size: usize,
    pub mismatches: usize,
}

impl FlagModel {
    /// `g ∈ P_I w P_J` (via the partial-flag position of `(E_I, g E_J)`)
    /// exactly when `g ∈ B x B` for some `x ∈ W_I w W_J` (via full flags).
    pub fn cell_decomposition_check(
        &self,
        left: GenSet,
        w: &Element,
        right: GenSet,
    ) -> Result<CellCheck> {
        let group = gl_elements(self.field(), self.n())?;
        self.cell_check_with(&group, left, w, right)
    }

    pub(crate) fn cell_check_with(
        &self,
        group: &[Matrix],
        left: GenSet,
        w: &Element,
        right: GenSet,
    ) -> Result<CellCheck> {
        let sys = self.system();
        let field = self.field();
        let n = self.n();
        let id = super::linalg::identity(n);
        let full_dims: Vec<usize> = (1..n).collect();
        let e_full = column_flag(field, &id, &full_dims);
        let e_left = column_flag(field, &id, &type_to_dims(n, left));
        let right_dims = type_to_dims(n, right);
        let d = min_double_coset_rep(sys, left, w, right);
        let members: HashSet<Element> = double_coset_elements(sys, left, &d, right)?
            .into_iter()
            .collect();
        let mut cell_size = 0;
        let mut mismatches = 0;
        for g in group {
            let partial =
                relative_position(sys, field, &e_left, &column_flag(field, g, &right_dims))?;
            let in_cell = partial.min_rep == d;
            let sigma = full_position_perm(field, &e_full, &column_flag(field, g, &full_dims))?;
            let in_union = members.contains(&perm_to_element(sys, &sigma));
            cell_size += in_cell as usize;
            mismatches += (in_cell != in_union) as usize;
        }
        Ok(CellCheck {
            holds: mismatches == 0,
            cell_size,
            mismatches,
        })
    }

    /// For a flag `f0` with stabiliser `P0`, returns the number of cosets
    /// `g P0` with `g^{-1} F(g) ∈ P0 · F(P0)` and the number of points of
    /// `X_I(w)` where `(f0, F(f0))` is in position `w`.
    pub fn orbit_count_check(&self, f0: &PartialFlag) -> Result<(usize, usize)> {
        let group = gl_elements(self.field(), self.n())?;
        self.orbit_count_with(&group, f0)
    }

    pub(crate) fn orbit_count_with(
        &self,
        group: &[Matrix],
        f0: &PartialFlag,
    ) -> Result<(usize, usize)> {
        let field = self.field();
        let frob = self.frobenius_map();
        let ff0 = self.frobenius(f0);
        let stabiliser: Vec<&Matrix> = group.iter().filter(|g| act(field, g, f0) == *f0).collect();
        // h ∈ P0 · F(P0) iff h · F(f0) lies in the P0-orbit of F(f0)
        let orbit: HashSet<PartialFlag> = stabiliser.iter().map(|a| act(field, a, &ff0)).collect();
        let mut hits = 0usize;
        for g in group {
            let g_inv = inverse(field, g).expect("group element");
            let h = mat_mul(field, &g_inv, &frob.apply_matrix(field, g));
            if orbit.contains(&act(field, &h, &ff0)) {
                hits += 1;
            }
        }
        let pos = self.dl_position(f0)?;
        let points = self.dl_points(pos.left, &pos.min_rep)?.len();
        Ok((hits / stabiliser.len(), points))
    }
}
