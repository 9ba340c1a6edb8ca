//! Relative position of two flags as a double coset of `S_n`.
//!
//! For full flags `V`, `V'` the numbers `r_ij = d_ij − d_{i−1,j} − d_{i,j−1} +
//! d_{i−1,j−1}`, with `d_ij = dim(V_i ∩ V'_j)`, form a permutation matrix; the
//! permutation `σ` with `σ(j) = i` when `r_ij = 1` is the position. The
//! standard flag `E` and `wE` (spanned by `e_{w(1)}, ..., e_{w(j)}`) are in
//! position `w`. For partial flags the same block differences count how many
//! basis vectors fall in each pair of blocks, and the minimal double coset
//! representative is read off block by block.

use serde::Serialize;

use super::field::FiniteField;
use super::flags::{PartialFlag, Subspace};
use super::linalg::{rref, Matrix};
use crate::coxeter::{CoxeterSystem, Element, GenSet, Word};
use crate::error::{Error, Result};

/// The double coset `W_I x W_J` indexing the `G`-orbit of a pair of flags of
/// types `I` and `J`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RelativePosition {
    pub left: GenSet,
    pub right: GenSet,
    pub min_rep: Element,
}

#[derive(Debug, Clone, Serialize)]
pub struct PositionRecord {
    pub left: GenSet,
    pub right: GenSet,
    pub min_rep: Vec<usize>,
}

impl RelativePosition {
    pub fn record(&self, sys: &CoxeterSystem) -> PositionRecord {
        PositionRecord {
            left: self.left,
            right: self.right,
            min_rep: sys.reduced_word(&self.min_rep).labels(),
        }
    }
}

/// `s_1, ..., s_{n−1}` acting as the adjacent transpositions.
pub fn perm_to_element(sys: &CoxeterSystem, sigma: &[usize]) -> Element {
    let mut p = sigma.to_vec();
    let mut letters = Vec::new();
    while let Some(i) = (0..p.len().saturating_sub(1)).find(|&i| p[i] > p[i + 1]) {
        p.swap(i, i + 1);
        letters.push(i);
    }
    letters.reverse();
    sys.from_word(&Word(letters))
        .expect("adjacent transpositions are generators of A_{n-1}")
}

pub fn element_to_perm(sys: &CoxeterSystem, w: &Element) -> Vec<usize> {
    let n = sys.rank() + 1;
    let mut p: Vec<usize> = (0..n).collect();
    for s in sys.reduced_word(w).0 {
        p.swap(s, s + 1);
    }
    p
}

/// Permutation matrix of `σ`: column `j` is `e_{σ(j)}`.
pub fn permutation_matrix(sigma: &[usize]) -> Matrix {
    let n = sigma.len();
    let mut m = vec![vec![0; n]; n];
    for (j, &i) in sigma.iter().enumerate() {
        m[i][j] = 1;
    }
    m
}

fn intersection_dim(field: &FiniteField, a: &Matrix, b: &Matrix) -> usize {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let joined: Matrix = a.iter().chain(b).cloned().collect();
    a.len() + b.len() - rref(field, joined).0.len()
}

/// `r[a][b]`: number of basis vectors in block `a` of `f1` and block `b` of `f2`.
pub fn block_counts(
    field: &FiniteField,
    f1: &PartialFlag,
    f2: &PartialFlag,
) -> Result<Vec<Vec<usize>>> {
    let n = f1.ambient_dim();
    if f2.ambient_dim() != n {
        return Err(Error::Flag(format!(
            "ambient dimensions differ: {} and {}",
            n,
            f2.ambient_dim()
        )));
    }
    let chain = |f: &PartialFlag| -> Vec<Matrix> {
        let mut v = vec![Vec::new()];
        v.extend(f.spaces().iter().map(|s: &Subspace| s.rows().clone()));
        v.push(super::flags::identity_rows(n));
        v
    };
    let c1 = chain(f1);
    let c2 = chain(f2);
    let d: Vec<Vec<usize>> = c1
        .iter()
        .map(|a| c2.iter().map(|b| intersection_dim(field, a, b)).collect())
        .collect();
    Ok((1..c1.len())
        .map(|a| {
            (1..c2.len())
                .map(|b| d[a][b] + d[a - 1][b - 1] - d[a - 1][b] - d[a][b - 1])
                .collect()
        })
        .collect())
}

/// The minimal permutation with the given block counts. Rows are blocks of
/// the first flag, columns blocks of the second.
pub fn min_perm_from_blocks(
    n: usize,
    dims1: &[usize],
    dims2: &[usize],
    r: &[Vec<usize>],
) -> Vec<usize> {
    let starts = |dims: &[usize]| -> Vec<usize> {
        let mut v = vec![0];
        v.extend_from_slice(dims);
        v
    };
    let mut next_row = starts(dims1);
    let col_starts = starts(dims2);
    let mut sigma = vec![0; n];
    for (b, &cstart) in col_starts.iter().enumerate() {
        let mut col = cstart;
        for (a, row) in r.iter().enumerate() {
            for _ in 0..row[b] {
                sigma[col] = next_row[a];
                next_row[a] += 1;
                col += 1;
            }
        }
    }
    sigma
}

pub fn relative_position(
    sys: &CoxeterSystem,
    field: &FiniteField,
    f1: &PartialFlag,
    f2: &PartialFlag,
) -> Result<RelativePosition> {
    let n = f1.ambient_dim();
    if sys.rank() + 1 != n {
        return Err(Error::Flag(format!(
            "Coxeter system of rank {} does not match GL_{n}",
            sys.rank()
        )));
    }
    let r = block_counts(field, f1, f2)?;
    let sigma = min_perm_from_blocks(n, f1.dims(), f2.dims(), &r);
    Ok(RelativePosition {
        left: f1.parabolic_type(),
        right: f2.parabolic_type(),
        min_rep: perm_to_element(sys, &sigma),
    })
}

/// Position of two full flags as a permutation, straight from the `r_ij`.
pub fn full_position_perm(
    field: &FiniteField,
    f1: &PartialFlag,
    f2: &PartialFlag,
) -> Result<Vec<usize>> {
    if !f1.is_full() || !f2.is_full() {
        return Err(Error::Flag("full flags required".into()));
    }
    let r = block_counts(field, f1, f2)?;
    let n = f1.ambient_dim();
    let mut sigma = vec![0; n];
    for (i, row) in r.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            if x == 1 {
                sigma[j] = i;
            }
        }
    }
    Ok(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag::flags::{column_flag, enumerate_flags};
    use crate::parabolic::min_double_coset_rep;

    #[test]
    fn standard_flag_positions() {
        let f = FiniteField::with_order(2).unwrap();
        let sys = CoxeterSystem::parse("A2").unwrap();
        let e = column_flag(&f, &super::super::flags::identity_rows(3), &[1, 2]);
        for w in sys.elements().unwrap() {
            let sigma = element_to_perm(&sys, &w);
            assert_eq!(perm_to_element(&sys, &sigma), w);
            let wf = column_flag(&f, &permutation_matrix(&sigma), &[1, 2]);
            let pos = relative_position(&sys, &f, &e, &wf).unwrap();
            assert_eq!(pos.min_rep, w);
            assert_eq!(full_position_perm(&f, &e, &wf).unwrap(), sigma);
        }
        // identical flags
        let pos = relative_position(&sys, &f, &e, &e).unwrap();
        assert!(pos.min_rep.is_identity());
        // opposite flags
        let opp = column_flag(&f, &permutation_matrix(&[2, 1, 0]), &[1, 2]);
        let pos = relative_position(&sys, &f, &e, &opp).unwrap();
        assert_eq!(pos.min_rep, sys.longest_element(sys.all_generators()));
    }

    #[test]
    fn partial_positions_are_minimal_reps_of_refinements() {
        let f = FiniteField::with_order(2).unwrap();
        let sys = CoxeterSystem::parse("A3").unwrap();
        let full = enumerate_flags(&f, 4, &[1, 2, 3]).unwrap();
        let e = &full[0];
        for other in full.iter().step_by(7) {
            let w = relative_position(&sys, &f, e, other).unwrap().min_rep;
            for (d1, d2) in [
                (vec![1], vec![2]),
                (vec![1, 3], vec![2]),
                (vec![2], vec![2]),
                (vec![], vec![1, 2]),
            ] {
                let a = crate::flag::truncate_map(e, &d1).unwrap();
                let b = crate::flag::truncate_map(other, &d2).unwrap();
                let pos = relative_position(&sys, &f, &a, &b).unwrap();
                assert_eq!(
                    pos.min_rep,
                    min_double_coset_rep(&sys, pos.left, &w, pos.right)
                );
            }
        }
    }

    #[test]
    fn mismatched_ambient_dimension() {
        let f = FiniteField::with_order(2).unwrap();
        let sys = CoxeterSystem::parse("A2").unwrap();
        let a = enumerate_flags(&f, 3, &[1]).unwrap();
        let b = enumerate_flags(&f, 2, &[1]).unwrap();
        assert!(relative_position(&sys, &f, &a[0], &b[0]).is_err());
    }
}
