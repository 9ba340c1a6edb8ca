//! Partial flags in `F^n`, stored as canonical (reduced row echelon) bases.
//!
//! A flag of dimension sequence `d_1 < ... < d_k` (all strictly between 0 and
//! `n`) corresponds to parabolic type `I = S \ {s_{d_1}, ..., s_{d_k}}` of
//! `GL_n`: `s_i` stabilises every flag without an `i`-dimensional member.

use std::fmt;

use super::field::{Fe, FiniteField};
use super::linalg::{mat_vec, rref, Matrix};
use crate::coxeter::GenSet;
use crate::error::{Error, Result};
use crate::guard;

/// A subspace in reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace(Matrix);

impl Subspace {
    pub fn new(field: &FiniteField, rows: Matrix) -> Subspace {
        Subspace(rref(field, rows).0)
    }

    pub fn rows(&self) -> &Matrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialFlag {
    n: usize,
    dims: Vec<usize>,
    spaces: Vec<Subspace>,
}

impl PartialFlag {
    pub fn new(field: &FiniteField, n: usize, spaces: Vec<Matrix>) -> Result<PartialFlag> {
        let spaces: Vec<Subspace> = spaces
            .into_iter()
            .map(|m| Subspace::new(field, m))
            .collect();
        let dims: Vec<usize> = spaces.iter().map(Subspace::dim).collect();
        validate_dims(n, &dims)?;
        for pair in spaces.windows(2) {
            let joined: Matrix = pair[0].0.iter().chain(&pair[1].0).cloned().collect();
            if rref(field, joined).0.len() != pair[1].dim() {
                return Err(Error::Flag("subspaces are not nested".into()));
            }
        }
        Ok(PartialFlag { n, dims, spaces })
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }

    pub fn is_full(&self) -> bool {
        self.dims.len() + 1 == self.n
    }

    /// Parabolic type of the stabiliser.
    pub fn parabolic_type(&self) -> GenSet {
        dims_to_type(self.n, &self.dims)
    }

    /// The member of dimension `d`, with `0` and `F^n` at the ends.
    pub fn space_of_dim(&self, d: usize) -> Option<Matrix> {
        if d == 0 {
            return Some(Vec::new());
        }
        if d == self.n {
            return Some(identity_rows(self.n));
        }
        self.dims
            .iter()
            .position(|&x| x == d)
            .map(|i| self.spaces[i].0.clone())
    }
}

impl fmt::Display for PartialFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .spaces
            .iter()
            .map(|s| {
                let rows: Vec<String> =
                    s.0.iter()
                        .map(|r| {
                            r.iter()
                                .map(|x| x.to_string())
                                .collect::<Vec<_>>()
                                .join(",")
                        })
                        .collect();
                format!("<{}>", rows.join(";"))
            })
            .collect();
        write!(f, "{}", parts.join(" < "))
    }
}

pub fn identity_rows(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| (i == j) as Fe).collect())
        .collect()
}

pub fn validate_dims(n: usize, dims: &[usize]) -> Result<()> {
    if dims.windows(2).any(|w| w[0] >= w[1]) || dims.iter().any(|&d| d == 0 || d >= n) {
        return Err(Error::Flag(format!(
            "dimension sequence {dims:?} is not strictly increasing inside (0, {n})"
        )));
    }
    Ok(())
}

/// `I ↦` the dimension sequence of flags of type `I`.
pub fn type_to_dims(n: usize, parabolic_type: GenSet) -> Vec<usize> {
    (1..n)
        .filter(|&d| !parabolic_type.contains(d - 1))
        .collect()
}

pub fn dims_to_type(n: usize, dims: &[usize]) -> GenSet {
    (0..n.saturating_sub(1))
        .filter(|&s| !dims.contains(&(s + 1)))
        .collect()
}

/// Number of flags with the given dimensions in `F_Q^n` (a `Q`-multinomial).
pub fn flag_count(n: usize, dims: &[usize], q: u128) -> u128 {
    // [n]_Q! / Π [block]_Q!
    let qint = |k: usize| -> u128 { (0..k as u32).map(|i| q.pow(i)).sum() };
    let qfact = |k: usize| -> u128 { (1..=k).map(qint).product() };
    let mut bounds = vec![0];
    bounds.extend_from_slice(dims);
    bounds.push(n);
    let denom: u128 = bounds.windows(2).map(|w| qfact(w[1] - w[0])).product();
    qfact(n) / denom
}

/// All `e`-dimensional subspaces of `F^c`, in reduced row echelon form.
fn rref_subspaces(field: &FiniteField, c: usize, e: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    let mut pivots: Vec<usize> = (0..e).collect();
    loop {
        let free: Vec<(usize, usize)> = (0..e)
            .flat_map(|i| {
                let pivots = &pivots;
                (pivots[i] + 1..c)
                    .filter(move |j| !pivots.contains(j))
                    .map(move |j| (i, j))
            })
            .collect();
        let total = field.size().pow(free.len() as u32);
        for code in 0..total {
            let mut m = vec![vec![0 as Fe; c]; e];
            for (i, &p) in pivots.iter().enumerate() {
                m[i][p] = 1;
            }
            let mut rest = code;
            for &(i, j) in &free {
                m[i][j] = (rest % field.size()) as Fe;
                rest /= field.size();
            }
            out.push(m);
        }
        // next combination of pivot columns
        let mut i = e;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pivots[i] < c - e + i {
                pivots[i] += 1;
                for k in i + 1..e {
                    pivots[k] = pivots[k - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Subspaces `U` of dimension `dim` with `lower ⊆ U ⊆ upper`.
pub fn subspaces_between(
    field: &FiniteField,
    lower: &Matrix,
    upper: &Matrix,
    dim: usize,
) -> Vec<Matrix> {
    // complement of lower inside upper
    let mut basis = lower.clone();
    let mut complement = Vec::new();
    for v in upper {
        let mut trial = basis.clone();
        trial.push(v.clone());
        if rref(field, trial.clone()).0.len() > basis.len() {
            basis = trial;
            complement.push(v.clone());
        }
    }
    if dim < lower.len() || dim > lower.len() + complement.len() {
        return Vec::new();
    }
    let n = upper.first().map_or(0, Vec::len);
    rref_subspaces(field, complement.len(), dim - lower.len())
        .into_iter()
        .map(|u| {
            let mut rows = lower.clone();
            for coeffs in u {
                let mut v = vec![0; n];
                for (c, basis_vec) in coeffs.iter().zip(&complement) {
                    if *c != 0 {
                        for (x, &b) in v.iter_mut().zip(basis_vec) {
                            *x = field.add(*x, field.mul(*c, b));
                        }
                    }
                }
                rows.push(v);
            }
            rref(field, rows).0
        })
        .collect()
}

/// Every flag with the given dimension sequence over `field`, each once.
pub fn enumerate_flags(field: &FiniteField, n: usize, dims: &[usize]) -> Result<Vec<PartialFlag>> {
    validate_dims(n, dims)?;
    guard::check(
        "flag enumeration",
        flag_count(n, dims, field.size() as u128),
    )?;
    let full = identity_rows(n);
    let mut partial: Vec<Vec<Matrix>> = vec![Vec::new()];
    for &d in dims {
        let mut next = Vec::new();
        for chain in partial {
            let lower = chain.last().cloned().unwrap_or_default();
            for space in subspaces_between(field, &lower, &full, d) {
                let mut c = chain.clone();
                c.push(space);
                next.push(c);
            }
        }
        partial = next;
    }
    let mut out: Vec<PartialFlag> = partial
        .into_iter()
        .map(|spaces| PartialFlag {
            n,
            dims: dims.to_vec(),
            spaces: spaces.into_iter().map(Subspace).collect(),
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Forgets the members whose dimension is not in `target_dims`.
pub fn truncate_map(flag: &PartialFlag, target_dims: &[usize]) -> Result<PartialFlag> {
    validate_dims(flag.n, target_dims)?;
    let mut spaces = Vec::with_capacity(target_dims.len());
    for d in target_dims {
        let i = flag.dims.iter().position(|x| x == d).ok_or_else(|| {
            Error::Flag(format!(
                "target dimensions {target_dims:?} are not a subsequence of {:?}",
                flag.dims
            ))
        })?;
        spaces.push(flag.spaces[i].clone());
    }
    Ok(PartialFlag {
        n: flag.n,
        dims: target_dims.to_vec(),
        spaces,
    })
}

/// Full flags that agree with `flag` except possibly in dimension `s + 1`
/// (including `flag` itself).
pub fn neighbours(field: &FiniteField, flag: &PartialFlag, s: usize) -> Vec<PartialFlag> {
    let d = s + 1;
    let lower = flag.space_of_dim(d - 1).expect("full flag");
    let upper = flag.space_of_dim(d + 1).expect("full flag");
    let idx = flag.dims.iter().position(|&x| x == d).expect("full flag");
    subspaces_between(field, &lower, &upper, d)
        .into_iter()
        .map(|space| {
            let mut g = flag.clone();
            g.spaces[idx] = Subspace(space);
            g
        })
        .collect()
}

/// `g · flag` for an invertible `g`, acting on column vectors.
pub fn act(field: &FiniteField, g: &Matrix, flag: &PartialFlag) -> PartialFlag {
    PartialFlag {
        n: flag.n,
        dims: flag.dims.clone(),
        spaces: flag
            .spaces
            .iter()
            .map(|s| Subspace::new(field, s.0.iter().map(|v| mat_vec(field, g, v)).collect()))
            .collect(),
    }
}

/// The flag spanned by the first columns of `g` (the standard flag when
/// `g = 1`).
pub fn column_flag(field: &FiniteField, g: &Matrix, dims: &[usize]) -> PartialFlag {
    let n = g.len();
    let cols: Matrix = (0..n)
        .map(|j| g.iter().map(|row| row[j]).collect())
        .collect();
    PartialFlag {
        n,
        dims: dims.to_vec(),
        spaces: dims
            .iter()
            .map(|&d| Subspace::new(field, cols[..d].to_vec()))
            .collect(),
    }
}

/// Applies `x ↦ x^e` to every coordinate.
pub fn power_map(field: &FiniteField, flag: &PartialFlag, e: u64) -> PartialFlag {
    PartialFlag {
        n: flag.n,
        dims: flag.dims.clone(),
        spaces: flag
            .spaces
            .iter()
            .map(|s| {
                Subspace::new(
                    field,
                    s.0.iter()
                        .map(|v| v.iter().map(|&x| field.pow(x, e)).collect())
                        .collect(),
                )
            })
            .collect(),
    }
}

/// Orthogonal complements under the antidiagonal form, order reversed.
pub fn perp_flag(field: &FiniteField, flag: &PartialFlag) -> PartialFlag {
    let n = flag.n;
    let mut dims = Vec::new();
    let mut spaces = Vec::new();
    for s in flag.spaces.iter().rev() {
        dims.push(n - s.dim());
        spaces.push(Subspace::new(
            field,
            super::linalg::antidiagonal_perp(field, &s.0, n),
        ));
    }
    PartialFlag { n, dims, spaces }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: usize) -> FiniteField {
        FiniteField::with_order(q).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        let f2 = field(2);
        assert_eq!(enumerate_flags(&f2, 2, &[1]).unwrap().len(), 3);
        assert_eq!(enumerate_flags(&f2, 3, &[1, 2]).unwrap().len(), 21);
        assert_eq!(enumerate_flags(&f2, 3, &[1]).unwrap().len(), 7);
        assert_eq!(enumerate_flags(&f2, 3, &[]).unwrap().len(), 1);
        let f3 = field(3);
        assert_eq!(enumerate_flags(&f3, 4, &[2]).unwrap().len(), 130);
    }

    #[test]
    fn enumeration_matches_counting_formula_and_is_duplicate_free() {
        for q in [2usize, 3, 4] {
            let f = field(q);
            for (n, dims) in [
                (2, vec![1]),
                (3, vec![1, 2]),
                (3, vec![2]),
                (4, vec![1, 3]),
                (4, vec![1, 2, 3]),
            ] {
                if q == 4 && n == 4 {
                    continue;
                }
                let flags = enumerate_flags(&f, n, &dims).unwrap();
                assert_eq!(flags.len() as u128, flag_count(n, &dims, q as u128));
                let mut dedup = flags.clone();
                dedup.dedup();
                assert_eq!(dedup.len(), flags.len());
            }
        }
    }

    #[test]
    fn truncation() {
        let f2 = field(2);
        let full = enumerate_flags(&f2, 3, &[1, 2]).unwrap();
        let mut lines: Vec<PartialFlag> = full
            .iter()
            .map(|fl| truncate_map(fl, &[1]).unwrap())
            .collect();
        lines.sort();
        lines.dedup();
        assert_eq!(lines, enumerate_flags(&f2, 3, &[1]).unwrap());
        assert_eq!(truncate_map(&full[0], &[1, 2]).unwrap(), full[0]);
        let line = truncate_map(&full[0], &[1]).unwrap();
        assert!(truncate_map(&line, &[2]).is_err());
    }

    #[test]
    fn type_conversions() {
        assert_eq!(type_to_dims(3, GenSet::empty()), vec![1, 2]);
        assert_eq!(type_to_dims(3, GenSet::single(1)), vec![1]);
        assert_eq!(dims_to_type(3, &[1]), GenSet::single(1));
        assert_eq!(dims_to_type(3, &[]), GenSet::full(2));
    }

    #[test]
    fn neighbours_count() {
        let f3 = field(3);
        let full = enumerate_flags(&f3, 3, &[1, 2]).unwrap();
        for s in 0..2 {
            let nb = neighbours(&f3, &full[5], s);
            assert_eq!(nb.len(), 4);
            assert!(nb.contains(&full[5]));
        }
    }

    #[test]
    fn bad_dimension_sequences() {
        let f2 = field(2);
        assert!(enumerate_flags(&f2, 3, &[2, 1]).is_err());
        assert!(enumerate_flags(&f2, 3, &[3]).is_err());
        assert!(PartialFlag::new(
            &f2,
            3,
            vec![vec![vec![1, 0, 0]], vec![vec![0, 1, 0], vec![0, 0, 1]]]
        )
        .is_err());
    }
}
