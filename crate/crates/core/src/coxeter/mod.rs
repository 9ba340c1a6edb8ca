//! Finite Weyl groups acting on their root systems.
//!
//! An element is stored as the permutation it induces on the full root set
//! (positive roots first, then their negatives in the same order). This gives
//! exact equality and O(N) multiplication, and the length is the number of
//! positive roots sent to negative ones.
//!
//! Generators are 0-based internally. Every textual form (words, subsets,
//! CLI input) is 1-based.

mod cartan;
mod genset;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

pub use cartan::{
    classify_component, connected_components, parse_type_list, CartanType, MAX_COMPONENT_RANK,
};
pub use genset::GenSet;

use crate::error::{Error, ParseError, Result};
use crate::guard;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// A finite sequence of generators (0-based indices).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> GenSet {
        self.0.iter().copied().collect()
    }

    /// Parses space-separated 1-based generator labels; the empty string is
    /// the empty word.
    pub fn parse(input: &str, rank: usize) -> std::result::Result<Word, ParseError> {
        let mut out = Vec::new();
        for (pos, token) in tokens(input, |c| c.is_whitespace()) {
            let label: usize = token
                .parse()
                .map_err(|_| ParseError::new(input, pos, "expected a generator index"))?;
            if label == 0 || label > rank {
                return Err(ParseError::new(
                    input,
                    pos,
                    format!("generator {label} out of range 1..={rank}"),
                ));
            }
            out.push(label - 1);
        }
        Ok(Word(out))
    }

    /// 1-based labels, as written on the command line.
    pub fn labels(&self) -> Vec<usize> {
        self.0.iter().map(|s| s + 1).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.0.iter().map(|s| (s + 1).to_string()).collect();
        write!(f, "{}", labels.join(" "))
    }
}

/// Splits `input` on separator characters, yielding (byte offset, token).
pub(crate) fn tokens(input: &str, sep: impl Fn(char) -> bool) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in input.char_indices() {
        if sep(c) {
            if let Some(s) = start.take() {
                out.push((s, &input[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &input[s..]));
    }
    out
}

/// One irreducible factor of a Coxeter system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub cartan: CartanType,
    /// Global generator indices listed in Bourbaki order for `cartan`.
    pub generators: Vec<usize>,
}

/// A finite Coxeter system of crystallographic type, with its root system.
///
/// Immutable after construction.
#[derive(Debug)]
pub struct CoxeterSystem {
    id: u64,
    rank: usize,
    matrix: Vec<Vec<u32>>,
    components: Vec<Component>,
    /// Roots as coefficient vectors in the simple roots. Indices `0..n_pos`
    /// are positive and `n_pos + i` is the negative of root `i`.
    roots: Vec<Vec<i32>>,
    n_pos: usize,
    /// `reflect[s][b]`: index of `s(root b)`.
    reflect: Vec<Vec<u16>>,
    order: u128,
    label: String,
}

/// An element of a [`CoxeterSystem`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    group: u64,
    perm: Box<[u16]>,
    length: u32,
}

impl Element {
    pub fn length(&self) -> usize {
        self.length as usize
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element(len {})", self.length)
    }
}

impl CoxeterSystem {
    /// Builds a system from a group specification string: a product of Cartan
    /// types (`"A3"`, `"B2xA1"`) or an explicit matrix (`"matrix:[[1,3],[3,1]]"`).
    pub fn parse(spec: &str) -> Result<CoxeterSystem> {
        let trimmed = spec.trim();
        if let Some(rest) = trimmed.strip_prefix("matrix:") {
            let offset = spec.len() - rest.len();
            let matrix: Vec<Vec<u32>> = serde_json::from_str(rest).map_err(|e| {
                ParseError::new(
                    spec,
                    offset + e.column().saturating_sub(1),
                    format!("bad matrix literal: {e}"),
                )
            })?;
            CoxeterSystem::from_matrix(matrix)
        } else {
            CoxeterSystem::from_types(&parse_type_list(spec)?)
        }
    }

    /// Product of Cartan types; generators are numbered consecutively, each
    /// factor in Bourbaki order.
    pub fn from_types(types: &[CartanType]) -> Result<CoxeterSystem> {
        let rank: usize = types.iter().map(|t| t.rank()).sum();
        let mut matrix = vec![vec![2u32; rank]; rank];
        let mut components = Vec::new();
        let mut offset = 0;
        for &ty in types {
            ty.validate()?;
            let n = ty.rank();
            for i in 0..n {
                for j in 0..n {
                    matrix[offset + i][offset + j] = ty.coxeter_entry(i, j);
                }
            }
            components.push(Component {
                cartan: ty,
                generators: (offset..offset + n).collect(),
            });
            offset += n;
        }
        for (i, row) in matrix.iter_mut().enumerate() {
            row[i] = 1;
        }
        let label = types
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join("x");
        CoxeterSystem::build(matrix, components, label)
    }

    /// Explicit Coxeter matrix with entries in {2, 3, 4, 6} off the diagonal.
    /// Generator numbering follows the matrix rows.
    pub fn from_matrix(matrix: Vec<Vec<u32>>) -> Result<CoxeterSystem> {
        let rank = matrix.len();
        if rank > 64 {
            return Err(Error::InvalidMatrix(format!("rank {rank} exceeds 64")));
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidMatrix(format!(
                    "row {} has {} entries, expected {rank}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, &m) in row.iter().enumerate() {
                if i == j && m != 1 {
                    return Err(Error::InvalidMatrix(format!(
                        "diagonal entry m({0},{0}) = {m}, expected 1",
                        i + 1
                    )));
                }
                if i != j && !matches!(m, 2 | 3 | 4 | 6) {
                    return Err(Error::InvalidMatrix(format!(
                        "m({},{}) = {m} is not one of 2, 3, 4, 6",
                        i + 1,
                        j + 1
                    )));
                }
                if matrix[j][i] != m {
                    return Err(Error::InvalidMatrix(format!(
                        "not symmetric at ({},{})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let all: Vec<usize> = (0..rank).collect();
        let mut components = Vec::new();
        for comp in connected_components(&matrix, &all) {
            match classify_component(&matrix, &comp) {
                Some((cartan, generators)) if cartan.validate().is_ok() => {
                    components.push(Component { cartan, generators })
                }
                _ => {
                    return Err(Error::InfiniteType {
                        submatrix: describe_submatrix(&matrix, &comp),
                    })
                }
            }
        }
        let label = format!(
            "matrix:{}",
            serde_json::to_string(&matrix).unwrap_or_default()
        );
        CoxeterSystem::build(matrix, components, label)
    }

    fn build(matrix: Vec<Vec<u32>>, components: Vec<Component>, label: String) -> Result<Self> {
        let rank = matrix.len();
        // <alpha_j, alpha_i^vee>, oriented arbitrarily on multiple bonds; any
        // orientation gives a root system with the same Weyl group
        let mut pairing = vec![vec![0i32; rank]; rank];
        for i in 0..rank {
            pairing[i][i] = 2;
            for j in (i + 1)..rank {
                let (a, b) = match matrix[i][j] {
                    2 => (0, 0),
                    3 => (-1, -1),
                    4 => (-1, -2),
                    6 => (-1, -3),
                    m => return Err(Error::InvalidMatrix(format!("unsupported label {m}"))),
                };
                pairing[i][j] = a;
                pairing[j][i] = b;
            }
        }
        let reflect_vec = |s: usize, beta: &[i32]| -> Vec<i32> {
            let c: i32 = (0..rank).map(|j| beta[j] * pairing[j][s]).sum();
            let mut out = beta.to_vec();
            out[s] -= c;
            out
        };

        // orbit of the simple roots
        let mut all: Vec<Vec<i32>> = Vec::new();
        let mut index: HashMap<Vec<i32>, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        for s in 0..rank {
            let mut e = vec![0; rank];
            e[s] = 1;
            index.insert(e.clone(), all.len());
            all.push(e.clone());
            queue.push_back(e);
        }
        while let Some(beta) = queue.pop_front() {
            for s in 0..rank {
                let img = reflect_vec(s, &beta);
                if !index.contains_key(&img) {
                    if all.len() > u16::MAX as usize / 2 {
                        return Err(Error::InvalidMatrix("root system too large".into()));
                    }
                    index.insert(img.clone(), all.len());
                    all.push(img.clone());
                    queue.push_back(img);
                }
            }
        }
        let mut positive: Vec<Vec<i32>> = all
            .into_iter()
            .filter(|r| r.iter().all(|&c| c >= 0))
            .collect();
        positive.sort_by(|a, b| {
            let ha: i32 = a.iter().sum();
            let hb: i32 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let n_pos = positive.len();
        let mut roots = positive.clone();
        roots.extend(positive.iter().map(|r| r.iter().map(|c| -c).collect()));
        let lookup: HashMap<&[i32], usize> = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.as_slice(), i))
            .collect();
        let mut reflect = vec![Vec::with_capacity(roots.len()); rank];
        for (s, table) in reflect.iter_mut().enumerate() {
            for r in &roots {
                let img = reflect_vec(s, r);
                let idx = *lookup
                    .get(img.as_slice())
                    .ok_or_else(|| Error::Defect("root system not closed".into()))?;
                table.push(idx as u16);
            }
        }
        let order = components.iter().map(|c| c.cartan.order()).product();
        Ok(CoxeterSystem {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            rank,
            matrix,
            components,
            roots,
            n_pos,
            reflect,
            order,
            label,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The full generator set `S`.
    pub fn all_generators(&self) -> GenSet {
        GenSet::full(self.rank)
    }

    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.matrix
    }

    pub fn m(&self, s: usize, t: usize) -> u32 {
        self.matrix[s][t]
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Number of positive roots, equal to the length of the longest element.
    pub fn num_positive_roots(&self) -> usize {
        self.n_pos
    }

    pub fn positive_roots(&self) -> &[Vec<i32>] {
        &self.roots[..self.n_pos]
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    /// The specification this system was built from, normalised.
    pub fn label(&self) -> &str {
        &self.label
    }

    fn make(&self, perm: Box<[u16]>) -> Element {
        let n = self.n_pos as u16;
        let length = perm[..self.n_pos].iter().filter(|&&b| b >= n).count() as u32;
        Element {
            group: self.id,
            perm,
            length,
        }
    }

    fn owns(&self, w: &Element) -> Result<()> {
        if w.group == self.id {
            Ok(())
        } else {
            Err(Error::MismatchedGroups)
        }
    }

    pub fn identity(&self) -> Element {
        Element {
            group: self.id,
            perm: (0..self.roots.len() as u16).collect(),
            length: 0,
        }
    }

    pub fn generator(&self, s: usize) -> Result<Element> {
        if s >= self.rank {
            return Err(Error::GeneratorOutOfRange(s + 1, self.rank));
        }
        Ok(self.make(self.reflect[s].clone().into_boxed_slice()))
    }

    pub fn multiply(&self, u: &Element, v: &Element) -> Result<Element> {
        self.owns(u)?;
        self.owns(v)?;
        Ok(self.mul_unchecked(u, v))
    }

    fn mul_unchecked(&self, u: &Element, v: &Element) -> Element {
        self.make(v.perm.iter().map(|&b| u.perm[b as usize]).collect())
    }

    pub fn inverse(&self, u: &Element) -> Result<Element> {
        self.owns(u)?;
        let mut inv = vec![0u16; u.perm.len()];
        for (b, &img) in u.perm.iter().enumerate() {
            inv[img as usize] = b as u16;
        }
        Ok(Element {
            group: self.id,
            perm: inv.into_boxed_slice(),
            length: u.length,
        })
    }

    /// `s·w`.
    pub fn left_mul_gen(&self, s: usize, w: &Element) -> Element {
        let table = &self.reflect[s];
        self.make(w.perm.iter().map(|&b| table[b as usize]).collect())
    }

    /// `w·s`.
    pub fn right_mul_gen(&self, w: &Element, s: usize) -> Element {
        self.make(
            self.reflect[s]
                .iter()
                .map(|&b| w.perm[b as usize])
                .collect(),
        )
    }

    /// `ℓ(w·s) < ℓ(w)`, i.e. `w(α_s)` is negative.
    pub fn is_right_descent(&self, w: &Element, s: usize) -> bool {
        w.perm[s] as usize >= self.n_pos
    }

    /// `ℓ(s·w) < ℓ(w)`, i.e. `w⁻¹(α_s)` is negative.
    pub fn is_left_descent(&self, w: &Element, s: usize) -> bool {
        // w⁻¹(α_s) < 0  ⇔  α_s = w(β) for a negative β
        let target = s as u16;
        let pos = w.perm.iter().position(|&b| b == target).unwrap_or(0);
        pos >= self.n_pos
    }

    pub fn left_descents(&self, w: &Element) -> GenSet {
        (0..self.rank)
            .filter(|&s| self.is_left_descent(w, s))
            .collect()
    }

    pub fn right_descents(&self, w: &Element) -> GenSet {
        (0..self.rank)
            .filter(|&s| self.is_right_descent(w, s))
            .collect()
    }

    pub fn length(&self, w: &Element) -> usize {
        w.length()
    }

    pub fn from_word(&self, word: &Word) -> Result<Element> {
        let mut w = self.identity();
        for &s in &word.0 {
            if s >= self.rank {
                return Err(Error::GeneratorOutOfRange(s + 1, self.rank));
            }
            w = self.right_mul_gen(&w, s);
        }
        Ok(w)
    }

    /// Normal form: repeatedly strip the smallest left descent.
    pub fn reduced_word(&self, w: &Element) -> Word {
        let mut out = Vec::with_capacity(w.length());
        let mut cur = w.clone();
        while !cur.is_identity() {
            let s = (0..self.rank)
                .find(|&s| self.is_left_descent(&cur, s))
                .expect("non-identity element has a left descent");
            out.push(s);
            cur = self.left_mul_gen(s, &cur);
        }
        Word(out)
    }

    /// Generators occurring in any (equivalently every) reduced word.
    pub fn support(&self, w: &Element) -> GenSet {
        self.reduced_word(w).letters()
    }

    /// Bruhat order by descent recursion: for a left descent `s` of `v`,
    /// `u ≤ v` iff `min(u, su) ≤ sv`.
    pub fn bruhat_leq(&self, u: &Element, v: &Element) -> Result<bool> {
        self.owns(u)?;
        self.owns(v)?;
        let mut u = u.clone();
        let mut v = v.clone();
        loop {
            if u.length > v.length {
                return Ok(false);
            }
            if u.length == v.length {
                return Ok(u == v);
            }
            if u.is_identity() {
                return Ok(true);
            }
            let s = (0..self.rank)
                .find(|&s| self.is_left_descent(&v, s))
                .expect("v has positive length");
            if self.is_left_descent(&u, s) {
                u = self.left_mul_gen(s, &u);
            }
            v = self.left_mul_gen(s, &v);
        }
    }

    /// The longest element of `W_I`.
    pub fn longest_element(&self, subset: GenSet) -> Element {
        let mut w = self.identity();
        while let Some(s) = subset.iter().find(|&s| !self.is_right_descent(&w, s)) {
            w = self.right_mul_gen(&w, s);
        }
        w
    }

    /// `w ↦ σ(w)` for a permutation `σ` of `S` that preserves the Coxeter matrix.
    pub fn apply_generator_map(&self, w: &Element, map: &[usize]) -> Element {
        let word = self.reduced_word(w);
        let mut out = self.identity();
        for s in word.0 {
            out = self.right_mul_gen(&out, map[s]);
        }
        out
    }

    /// All elements of `W_I` (or `W` for the full set), by breadth-first search.
    pub fn parabolic_elements(&self, subset: GenSet) -> Result<Vec<Element>> {
        guard::check("parabolic subgroup", self.parabolic_order(subset))?;
        let mut seen: HashSet<Element> = HashSet::new();
        let mut order = vec![self.identity()];
        seen.insert(self.identity());
        let mut i = 0;
        while i < order.len() {
            for s in subset.iter() {
                let next = self.right_mul_gen(&order[i], s);
                if seen.insert(next.clone()) {
                    order.push(next);
                }
            }
            i += 1;
        }
        Ok(order)
    }

    pub fn elements(&self) -> Result<Vec<Element>> {
        self.parabolic_elements(self.all_generators())
    }

    /// `|W_I|`, from the Cartan types of the components of the induced subgraph.
    pub fn parabolic_order(&self, subset: GenSet) -> u128 {
        let nodes: Vec<usize> = subset.iter().filter(|&s| s < self.rank).collect();
        connected_components(&self.matrix, &nodes)
            .iter()
            .map(|comp| {
                classify_component(&self.matrix, comp)
                    .map(|(t, _)| t.order())
                    .expect("subgraph of a finite-type graph has finite type")
            })
            .product()
    }

    /// Sort key used for deterministic listings: (length, normal-form word).
    pub fn sort_key(&self, w: &Element) -> (usize, Word) {
        (w.length(), self.reduced_word(w))
    }

    pub fn sort_elements(&self, elems: &mut [Element]) {
        elems.sort_by_cached_key(|w| self.sort_key(w));
    }

    pub fn parse_word(&self, input: &str) -> Result<Element> {
        let word = Word::parse(input, self.rank)?;
        self.from_word(&word)
    }

    pub fn parse_subset(&self, input: &str) -> Result<GenSet> {
        Ok(GenSet::parse(input, self.rank)?)
    }
}

fn describe_submatrix(matrix: &[Vec<u32>], nodes: &[usize]) -> String {
    let rows: Vec<String> = nodes
        .iter()
        .map(|&i| {
            let row: Vec<String> = nodes.iter().map(|&j| matrix[i][j].to_string()).collect();
            format!("[{}]", row.join(","))
        })
        .collect();
    let labels: Vec<String> = nodes.iter().map(|i| (i + 1).to_string()).collect();
    format!(
        "on generators {{{}}}: [{}]",
        labels.join(","),
        rows.join(",")
    )
}
