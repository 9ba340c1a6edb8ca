//! Row reduction over a [`FiniteField`].

use super::field::{Fe, FiniteField};

pub type Matrix = Vec<Vec<Fe>>;

/// Reduced row echelon form, zero rows dropped. Returns the rows and the
/// pivot column of each.
pub fn rref(f: &FiniteField, mut rows: Matrix) -> (Matrix, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r][c]).expect("pivot is non-zero");
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let factor = rows[i][c];
                let pivot_row = rows[r].clone();
                for (x, &p) in rows[i].iter_mut().zip(&pivot_row) {
                    *x = f.sub(*x, f.mul(factor, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(f: &FiniteField, rows: Matrix) -> usize {
    rref(f, rows).0.len()
}

/// Basis of the null space `{y : A y = 0}` for an `m × n` matrix `A`.
pub fn null_space(f: &FiniteField, a: Matrix, n: usize) -> Matrix {
    let (rows, pivots) = rref(f, a);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0; n];
            v[fc] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = f.neg(row[fc]);
            }
            v
        })
        .collect()
}

/// Orthogonal complement for the symmetric form `B(x, y) = Σ x_i y_{n+1-i}`.
pub fn antidiagonal_perp(f: &FiniteField, basis: &Matrix, n: usize) -> Matrix {
    if basis.is_empty() {
        return (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
    }
    let a: Matrix = basis
        .iter()
        .map(|x| x.iter().rev().copied().collect())
        .collect();
    null_space(f, a, n)
}

/// `g · v` for a column vector `v`.
pub fn mat_vec(f: &FiniteField, g: &Matrix, v: &[Fe]) -> Vec<Fe> {
    g.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
        })
        .collect()
}

pub fn mat_mul(f: &FiniteField, a: &Matrix, b: &Matrix) -> Matrix {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(0, |acc, (&x, brow)| f.add(acc, f.mul(x, brow[j])))
                })
                .collect()
        })
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let n = a.first().map_or(0, Vec::len);
    (0..n)
        .map(|j| a.iter().map(|row| row[j]).collect())
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| (i == j) as Fe).collect())
        .collect()
}

/// Inverse by Gauss-Jordan, `None` when singular.
pub fn inverse(f: &FiniteField, a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let aug: Matrix = a
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().copied().chain(id).collect())
        .collect();
    let (red, pivots) = rref(f, aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(red.into_iter().map(|row| row[n..].to_vec()).collect())
}
