//! Finite Cartan types, their Coxeter matrices in Bourbaki numbering, and the
//! classification of connected Coxeter graphs with labels in {3, 4, 6}.
//!
//! Node numbering (1-based, Bourbaki):
//!
//! ```text
//! A_n   1 - 2 - ... - n
//! B_n   1 - 2 - ... - (n-1) = n        m(n-1, n) = 4   (C_n: same Coxeter matrix)
//! D_n   1 - 2 - ... - (n-2) - (n-1)
//!                        \
//!                         n
//! E_n   1 - 3 - 4 - 5 - ... - n,  with 2 attached to 4
//! F_4   1 - 2 = 3 - 4                  m(2, 3) = 4
//! G_2   1 ≡ 2                          m(1, 2) = 6
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};

/// Largest accepted rank for a single irreducible component.
pub const MAX_COMPONENT_RANK: usize = 8;

#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl CartanType {
    pub fn rank(self) -> usize {
        match self {
            CartanType::A(n)
            | CartanType::B(n)
            | CartanType::C(n)
            | CartanType::D(n)
            | CartanType::E(n) => n,
            CartanType::F4 => 4,
            CartanType::G2 => 2,
        }
    }

    /// Checks the rank bounds for the family.
    pub fn validate(self) -> Result<()> {
        let n = self.rank();
        let ok = match self {
            CartanType::A(n) => n >= 1,
            CartanType::B(n) | CartanType::C(n) => n >= 2,
            CartanType::D(n) => n >= 4,
            CartanType::E(n) => (6..=8).contains(&n),
            CartanType::F4 | CartanType::G2 => true,
        };
        if !ok || n > MAX_COMPONENT_RANK {
            return Err(Error::UnsupportedType(self.to_string()));
        }
        Ok(())
    }

    /// Order of the Weyl group.
    pub fn order(self) -> u128 {
        fn factorial(n: usize) -> u128 {
            (1..=n as u128).product()
        }
        match self {
            CartanType::A(n) => factorial(n + 1),
            CartanType::B(n) | CartanType::C(n) => (1u128 << n) * factorial(n),
            CartanType::D(n) => (1u128 << (n - 1)) * factorial(n),
            CartanType::E(6) => 51_840,
            CartanType::E(7) => 2_903_040,
            CartanType::E(8) => 696_729_600,
            CartanType::E(_) => unreachable!("E_n validated to 6..=8"),
            CartanType::F4 => 1_152,
            CartanType::G2 => 12,
        }
    }

    /// Coxeter matrix entry for 0-based nodes `i`, `j` in Bourbaki numbering.
    pub fn coxeter_entry(self, i: usize, j: usize) -> u32 {
        if i == j {
            return 1;
        }
        let (i, j) = (i.min(j), i.max(j));
        let n = self.rank();
        let bond = match self {
            CartanType::A(_) => j == i + 1,
            CartanType::B(_) | CartanType::C(_) => {
                if j == i + 1 && j == n - 1 {
                    return 4;
                }
                j == i + 1
            }
            CartanType::D(_) => (j == i + 1 && j <= n - 2) || (i == n - 3 && j == n - 1),
            CartanType::E(_) => {
                // 1-3, 3-4, 4-5, ... and 2-4 (1-based)
                matches!((i, j), (0, 2) | (1, 3)) || (i >= 2 && j == i + 1)
            }
            CartanType::F4 => {
                if (i, j) == (1, 2) {
                    return 4;
                }
                j == i + 1
            }
            CartanType::G2 => return 6,
        };
        if bond {
            3
        } else {
            2
        }
    }

    pub fn coxeter_matrix(self) -> Vec<Vec<u32>> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| self.coxeter_entry(i, j)).collect())
            .collect()
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::B(n) => write!(f, "B{n}"),
            CartanType::C(n) => write!(f, "C{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
            CartanType::E(n) => write!(f, "E{n}"),
            CartanType::F4 => write!(f, "F4"),
            CartanType::G2 => write!(f, "G2"),
        }
    }
}

/// Parses a product of Cartan types such as `"A3"` or `"B2xA1"`.
pub fn parse_type_list(input: &str) -> std::result::Result<Vec<CartanType>, ParseError> {
    let bytes = input.as_bytes();
    let mut pos = 0;
    let mut out = Vec::new();
    loop {
        while pos < bytes.len() && bytes[pos] == b' ' {
            pos += 1;
        }
        let start = pos;
        let letter = match bytes.get(pos) {
            Some(c) if c.is_ascii_alphabetic() => c.to_ascii_uppercase(),
            Some(_) => return Err(ParseError::new(input, pos, "expected a Cartan type letter")),
            None => return Err(ParseError::new(input, pos, "expected a Cartan type")),
        };
        pos += 1;
        let digits_start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if digits_start == pos {
            return Err(ParseError::new(input, pos, "expected a rank"));
        }
        let n: usize = input[digits_start..pos]
            .parse()
            .map_err(|_| ParseError::new(input, digits_start, "rank out of range"))?;
        let ty = match letter {
            b'A' => CartanType::A(n),
            b'B' => CartanType::B(n),
            b'C' => CartanType::C(n),
            b'D' => CartanType::D(n),
            b'E' => CartanType::E(n),
            b'F' if n == 4 => CartanType::F4,
            b'G' if n == 2 => CartanType::G2,
            _ => return Err(ParseError::new(input, start, "unknown Cartan type")),
        };
        if ty.validate().is_err() {
            return Err(ParseError::new(
                input,
                start,
                format!("unsupported Cartan type {ty} (ranks are capped at {MAX_COMPONENT_RANK})"),
            ));
        }
        out.push(ty);
        while pos < bytes.len() && bytes[pos] == b' ' {
            pos += 1;
        }
        match bytes.get(pos) {
            None => return Ok(out),
            Some(b'x') | Some(b'X') | Some(b'*') => pos += 1,
            Some(_) => {
                return Err(ParseError::new(
                    input,
                    pos,
                    "expected 'x' between Cartan types",
                ))
            }
        }
    }
}

/// Identifies the finite type of a connected Coxeter graph.
///
/// `nodes` are indices into `matrix`. On success the nodes are returned
/// reordered into Bourbaki numbering for the detected type. Graphs of
/// infinite type yield `None`.
pub fn classify_component(
    matrix: &[Vec<u32>],
    nodes: &[usize],
) -> Option<(CartanType, Vec<usize>)> {
    let r = nodes.len();
    if r == 1 {
        return Some((CartanType::A(1), nodes.to_vec()));
    }
    let m = |a: usize, b: usize| matrix[nodes[a]][nodes[b]];
    let neighbours: Vec<Vec<usize>> = (0..r)
        .map(|a| (0..r).filter(|&b| b != a && m(a, b) > 2).collect())
        .collect();
    let edges: usize = neighbours.iter().map(Vec::len).sum::<usize>() / 2;
    if edges != r - 1 {
        return None; // cycle
    }
    let mut heavy = Vec::new();
    for (a, nb) in neighbours.iter().enumerate() {
        for &b in nb {
            if a < b && m(a, b) > 3 {
                heavy.push((a, b, m(a, b)));
            }
        }
    }
    let branch: Vec<usize> = (0..r).filter(|&a| neighbours[a].len() >= 3).collect();
    if neighbours.iter().any(|nb| nb.len() > 3) || branch.len() > 1 {
        return None;
    }
    let relabel = |order: Vec<usize>| order.into_iter().map(|a| nodes[a]).collect::<Vec<_>>();

    if let Some(&b) = branch.first() {
        if !heavy.is_empty() {
            return None;
        }
        let mut arms: Vec<Vec<usize>> = neighbours[b]
            .iter()
            .map(|&start| walk_arm(&neighbours, b, start))
            .collect();
        arms.sort_by_key(Vec::len);
        let lens: Vec<usize> = arms.iter().map(Vec::len).collect();
        return match lens.as_slice() {
            [1, 1, k] => {
                // D_n: long arm read towards the branch, then the branch, then the two leaves
                let n = k + 3;
                let mut order: Vec<usize> = arms[2].iter().rev().copied().collect();
                order.push(b);
                order.push(arms[0][0]);
                order.push(arms[1][0]);
                Some((CartanType::D(n), relabel(order)))
            }
            [1, 2, k @ 2..=4] => {
                // E_n: 1 = far end of the length-2 arm, 2 = short leaf, 3 = near end of
                // the length-2 arm, 4 = branch, then the long arm outward
                let n = k + 4;
                let mut order = vec![arms[1][1], arms[0][0], arms[1][0], b];
                order.extend(arms[2].iter().copied());
                Some((CartanType::E(n), relabel(order)))
            }
            _ => None,
        };
    }

    // path
    let end = (0..r).find(|&a| neighbours[a].len() == 1)?;
    let mut path = vec![end];
    let mut prev = usize::MAX;
    let mut cur = end;
    while let Some(&next) = neighbours[cur].iter().find(|&&x| x != prev) {
        path.push(next);
        prev = cur;
        cur = next;
    }
    match heavy.as_slice() {
        [] => Some((CartanType::A(r), relabel(path))),
        [(_, _, 6)] if r == 2 => Some((CartanType::G2, relabel(path))),
        [(a, b, 4)] => {
            let pa = path.iter().position(|x| x == a)?;
            let pb = path.iter().position(|x| x == b)?;
            let lo = pa.min(pb);
            if r == 2 || lo == r - 2 {
                Some((CartanType::B(r), relabel(path)))
            } else if lo == 0 {
                path.reverse();
                Some((CartanType::B(r), relabel(path)))
            } else if r == 4 && lo == 1 {
                Some((CartanType::F4, relabel(path)))
            } else {
                None
            }
        }
        _ => None,
    }
}

fn walk_arm(neighbours: &[Vec<usize>], from: usize, start: usize) -> Vec<usize> {
    let mut arm = vec![start];
    let mut prev = from;
    let mut cur = start;
    while let Some(&next) = neighbours[cur].iter().find(|&&x| x != prev) {
        if neighbours[cur].len() > 2 {
            break;
        }
        arm.push(next);
        prev = cur;
        cur = next;
    }
    arm
}

/// Splits the Coxeter graph restricted to `nodes` into connected components,
/// each sorted ascending, components ordered by smallest node.
pub fn connected_components(matrix: &[Vec<u32>], nodes: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; matrix.len()];
    let mut out = Vec::new();
    for &start in nodes {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < comp.len() {
            let a = comp[i];
            for &b in nodes {
                if !seen[b] && matrix[a][b] > 2 {
                    seen[b] = true;
                    comp.push(b);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_types() -> Vec<CartanType> {
        let mut v = Vec::new();
        for n in 1..=8 {
            v.push(CartanType::A(n));
        }
        for n in 2..=8 {
            v.push(CartanType::B(n));
        }
        for n in 4..=8 {
            v.push(CartanType::D(n));
        }
        for n in 6..=8 {
            v.push(CartanType::E(n));
        }
        v.push(CartanType::F4);
        v.push(CartanType::G2);
        v
    }

    #[test]
    fn classification_recovers_bourbaki_numbering() {
        for ty in all_types() {
            let m = ty.coxeter_matrix();
            let nodes: Vec<usize> = (0..ty.rank()).collect();
            let (found, order) = classify_component(&m, &nodes).unwrap();
            assert_eq!(found, ty, "{ty}");
            // relabelled matrix is the Bourbaki matrix
            for i in 0..ty.rank() {
                for j in 0..ty.rank() {
                    assert_eq!(m[order[i]][order[j]], ty.coxeter_entry(i, j), "{ty}");
                }
            }
        }
    }

    #[test]
    fn affine_and_cyclic_graphs_are_rejected() {
        // affine A~2: triangle
        let tri = vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]];
        assert!(classify_component(&tri, &[0, 1, 2]).is_none());
        // C~2: 4 = 4
        let c2 = vec![vec![1, 4, 2], vec![4, 1, 4], vec![2, 4, 1]];
        assert!(classify_component(&c2, &[0, 1, 2]).is_none());
        // G~2: 6 - 3
        let g2 = vec![vec![1, 6, 2], vec![6, 1, 3], vec![2, 3, 1]];
        assert!(classify_component(&g2, &[0, 1, 2]).is_none());
        // E~6 arms (2,2,2)
        let mut e = vec![vec![2u32; 7]; 7];
        for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)] {
            e[a][b] = 3;
            e[b][a] = 3;
        }
        for (i, row) in e.iter_mut().enumerate() {
            row[i] = 1;
        }
        assert!(classify_component(&e, &(0..7).collect::<Vec<_>>()).is_none());
    }

    #[test]
    fn weyl_group_orders() {
        assert_eq!(CartanType::A(2).order(), 6);
        assert_eq!(CartanType::B(2).order(), 8);
        assert_eq!(CartanType::B(3).order(), 48);
        assert_eq!(CartanType::D(4).order(), 192);
        assert_eq!(CartanType::G2.order(), 12);
    }

    #[test]
    fn type_strings() {
        assert_eq!(
            parse_type_list("B2xA1").unwrap(),
            vec![CartanType::B(2), CartanType::A(1)]
        );
        assert_eq!(parse_type_list("e6").unwrap(), vec![CartanType::E(6)]);
        let err = parse_type_list("A2xQ3").unwrap_err();
        assert_eq!(err.position, 3);
        assert!(parse_type_list("A9").is_err());
        assert!(parse_type_list("D3").is_err());
        assert!(parse_type_list("A2x").is_err());
        assert!(parse_type_list("").is_err());
    }
}
