//! Property suites run against a [`FlagModel`] by exhaustive enumeration.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::flags::{power_map, truncate_map, type_to_dims, PartialFlag};
use super::group::{gl_elements, gl_order};
use super::model::{FlagModel, FrobeniusKind};
use crate::coxeter::{Element, GenSet};
use crate::decision::{component_count_poly, f_closure};
use crate::error::{Error, Result};
use crate::guard;
use crate::parabolic::{double_coset_elements, double_coset_reps, min_double_coset_rep};
use crate::twist::Twist;

#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    Partition,
    Counts,
    Rationality,
    Image,
    Preimage,
    Fibration,
    Hatx,
    Frobenius,
    Orbits,
    Cells,
}

impl Property {
    pub const ALL: [Property; 10] = [
        Property::Partition,
        Property::Counts,
        Property::Rationality,
        Property::Image,
        Property::Preimage,
        Property::Fibration,
        Property::Hatx,
        Property::Frobenius,
        Property::Orbits,
        Property::Cells,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Partition => "partition",
            Property::Counts => "counts",
            Property::Rationality => "rationality",
            Property::Image => "image",
            Property::Preimage => "preimage",
            Property::Fibration => "fibration",
            Property::Hatx => "hatx",
            Property::Frobenius => "frobenius",
            Property::Orbits => "orbits",
            Property::Cells => "cells",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = match s {
            "eq1" => "image",
            "eq2" => "preimage",
            other => other,
        };
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Property::ALL.iter().map(|p| p.name()).collect();
                format!(
                    "unknown property '{s}', expected one of {}",
                    names.join(", ")
                )
            })
    }
}

#[derive(Debug, Copy, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub property: Property,
    pub status: Status,
    /// Number of individual assertions evaluated.
    pub checked: usize,
    pub detail: String,
    pub counterexample: Option<String>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

struct Tally {
    property: Property,
    checked: usize,
    counterexample: Option<String>,
}

impl Tally {
    fn new(property: Property) -> Tally {
        Tally {
            property,
            checked: 0,
            counterexample: None,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }

    fn finish(self, detail: String) -> PropertyReport {
        PropertyReport {
            property: self.property,
            status: if self.counterexample.is_some() {
                Status::Fail
            } else {
                Status::Pass
            },
            checked: self.checked,
            detail,
            counterexample: self.counterexample,
        }
    }
}

fn skipped(property: Property, detail: impl Into<String>) -> PropertyReport {
    PropertyReport {
        property,
        status: Status::Skipped,
        checked: 0,
        detail: detail.into(),
        counterexample: None,
    }
}

/// Flags of each type with the minimal representative of `(f, F(f))`.
struct Positions<'a> {
    model: &'a FlagModel,
    by_type: HashMap<GenSet, Vec<(PartialFlag, Element)>>,
}

impl<'a> Positions<'a> {
    fn new(model: &'a FlagModel) -> Positions<'a> {
        Positions {
            model,
            by_type: HashMap::new(),
        }
    }

    fn get(&mut self, parabolic_type: GenSet) -> Result<&[(PartialFlag, Element)]> {
        if !self.by_type.contains_key(&parabolic_type) {
            let mut v = Vec::new();
            for f in self.model.flags(parabolic_type)? {
                let pos = self.model.dl_position(&f)?.min_rep;
                v.push((f, pos));
            }
            self.by_type.insert(parabolic_type, v);
        }
        Ok(&self.by_type[&parabolic_type])
    }

    fn lookup(&mut self, parabolic_type: GenSet) -> Result<HashMap<PartialFlag, Element>> {
        Ok(self.get(parabolic_type)?.iter().cloned().collect())
    }
}

fn word(model: &FlagModel, w: &Element) -> String {
    let labels = model.system().reduced_word(w).labels();
    if labels.is_empty() {
        "1".into()
    } else {
        labels
            .iter()
            .map(|s| format!("s{s}"))
            .collect::<Vec<_>>()
            .join("")
    }
}

/// Runs the given properties. `skip_oversized` turns a size-guard failure into
/// a skipped report instead of an error.
pub fn run_properties(
    model: &FlagModel,
    properties: &[Property],
    skip_oversized: bool,
) -> Result<Vec<PropertyReport>> {
    let mut positions = Positions::new(model);
    let mut out = Vec::with_capacity(properties.len());
    for &p in properties {
        let report = match p {
            Property::Partition => partition(model, &mut positions),
            Property::Counts => counts(model, &mut positions),
            Property::Rationality => rationality(model, &mut positions),
            Property::Image => image(model, &mut positions),
            Property::Preimage => preimage(model, &mut positions),
            Property::Fibration => fibration(model, &mut positions),
            Property::Hatx => hatx(model, &mut positions),
            Property::Frobenius => frobenius(model),
            Property::Orbits => orbits(model, &mut positions),
            Property::Cells => cells(model),
        };
        match report {
            Ok(r) => out.push(r),
            Err(Error::SizeGuard {
                what,
                needed,
                limit,
            }) if skip_oversized => out.push(skipped(
                p,
                format!("{what}: {needed} exceeds limit {limit}"),
            )),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn partition(model: &FlagModel, pos: &mut Positions) -> Result<PropertyReport> {
    let mut t = Tally::new(Property::Partition);
    let sys = model.system();
    let mut totals = Vec::new();
    for i in GenSet::all_subsets(sys.rank()) {
        let right = model.twist().apply_set(i);
        let reps = double_coset_reps(sys, i, right)?;
        let groups = model.dl_partition(i)?;
        let expected = model.flag_count(i) as usize;
        let sum: usize = groups.iter().map(|(_, v)| v.len()).sum();
        t.check(sum == expected, || {
            format!("type {i}: cells sum to {sum}, expected {expected}")
        });
        let mut seen = HashSet::new();
        for (w, flags) in &groups {
            t.check(reps.contains(w), || {
                format!(
                    "type {i}: {} is not a minimal representative",
                    word(model, w)
                )
            });
            for f in flags {
                t.check(seen.insert(f.clone()), || {
                    format!("type {i}: flag {f} in two cells")
                });
            }
        }
        let cached = pos.get(i)?.len();
        t.check(cached == sum, || {
            format!("type {i}: {cached} flags enumerated, {sum} partitioned")
        });
        totals.push(format!("{i}: {sum}"));
    }
    let full = model.flag_count(GenSet::empty());
    Ok(t.finish(format!(
        "partition totals {full} (full flags); by type {}",
        totals.join(", ")
    )))
}

fn counts(model: &FlagModel, pos: &mut Positions) -> Result<PropertyReport> {
    let mut t = Tally::new(Property::Counts);
    let sys = model.system();
    let mut by_w: HashMap<Element, usize> = HashMap::new();
    for (_, w) in pos.get(GenSet::empty())? {
        *by_w.entry(w.clone()).or_default() += 1;
    }
    let mut parts = Vec::new();
    for w in sys.elements()? {
        let direct = model.dl_points(GenSet::empty(), &w)?.len();
        let tabulated = by_w.get(&w).copied().unwrap_or(0);
        t.check(direct == tabulated, || {
            format!(
                "X({}): {direct} points directly, {tabulated} tabulated",
                word(model, &w)
            )
        });
        parts.push(format!("X({}) = {direct}", word(model, &w)));
    }
    if model.n() == 2 && model.frobenius_map().kind == FrobeniusKind::Standard {
        let s = sys.generator(0)?;
        let count = model.dl_points(GenSet::empty(), &s)?.len();
        let q = model.q();
        let closed = q.pow(model.m()) - q;
        t.check(count == closed, || {
            format!("Drinfeld count {count}, expected q^m - q = {closed}")
        });
        parts.push(format!("Drinfeld count {count} (q^m - q = {closed})"));
    }
    Ok(t.finish(parts.join(", ")))
}

fn rationality(model: &FlagModel, pos: &mut Positions) -> Result<PropertyReport> {
    if model.m() != 1 || model.frobenius_map().kind != FrobeniusKind::Standard {
        return Ok(skipped(
            Property::Rationality,
            "applies to m = 1 with the standard Frobenius",
        ));
    }
    let mut t = Tally::new(Property::Rationality);
    let sys = model.system();
    for i in GenSet::all_subsets(sys.rank()) {
        let all = pos.get(i)?.len();
        for w in sys.elements()? {
            let trivial = min_double_coset_rep(sys, i, &w, i).is_identity();
            let n = model.dl_points(i, &w)?.len();
            let expected = if trivial { all } else { 0 };
            t.check(n == expected, || {
                format!(
                    "type {i}, w = {}: {n} rational points, expected {expected}",
                    word(model, &w)
                )
            });
        }
    }
    Ok(t.finish("rational flags lie only in the trivial position".into()))
}

/// `J ⊇ I` pairs as `(I, J)`.
fn nested_pairs(rank: usize) -> Vec<(GenSet, GenSet)> {
    let subsets: Vec<GenSet> = GenSet::all_subsets(rank).collect();
    let mut out = Vec::new();
    for &i in &subsets {
        for &j in &subsets {
            if i.is_subset(j) {
                out.push((i, j));
            }
        }
    }
    out
}

fn image(model: &FlagModel, pos: &mut Positions) -> Result<PropertyReport> {
    let mut t = Tally::new(Property::Image);
    let sys = model.system();
    let elements = sys.elements()?;
    let pairs = nested_pairs(sys.rank());
    for &(i, j) in &pairs {
        let dims_j = type_to_dims(model.n(), j);
        let right_i = model.twist().apply_set(i);
        let right_j = model.twist().apply_set(j);
        let source = pos.get(i)?.to_vec();
        let target = pos.lookup(j)?;
        for w in &elements {
            let wi = min_double_coset_rep(sys, i, w, right_i);
            let wj = min_double_coset_rep(sys, j, w, right_j);
            for (f, x) in &source {
                if *x != wi {
                    continue;
                }
                let image = truncate_map(f, &dims_j)?;
                let ok = target.get(&image) == Some(&wj);
                t.check(ok, || {
                    format!(
                        "I = {i}, J = {j}, w = {}: truncation of {f} leaves X_J(w)",
                        word(model, w)
                    )
                });
            }
        }
    }
    Ok(t.finish(format!(
        "truncation maps X_I(w) into X_J(w) for {} pairs I ⊆ J",
        pairs.len()
    )))
}

fn preimage(model: &FlagModel, pos: &mut Positions) -> Result<PropertyReport> {
    let mut t = Tally::new(Property::Preimage);
    let sys = model.system();
    let elements = sys.elements()?;
    let pairs = nested_pairs(sys.rank());
    for &(i, j) in &pairs {
        let dims_j = type_to_dims(model.n(), j);
        let right_j = model.twist().apply_set(j);
        let source = pos.get(i)?.to_vec();
        let target = pos.lookup(j)?;
        for w in &elements {
            let wj = min_double_coset_rep(sys, j, w, right_j);
            let coset: HashSet<Element> = double_coset_elements(sys, j, &wj, right_j)?
                .into_iter()
                .collect();
            for (f, x) in &source {
                let lhs = target.get(&truncate_map(f, &dims_j)?) == Some(&wj);
                let rhs = coset.contains(x);
                t.check(lhs == rhs, || {
                    format!(
                        "I = {i}, J = {j}, w = {}: flag {f} (position {}) {} the preimage",
                        word(model, w),
                        word(model, x),
                        if lhs { "is in" } else { "is not in" }
                    )
                });
            }
        }
    }
    Ok(t.finish(format!(
        "preimage identity holds for {} pairs I ⊆ J",
        pairs.len()
    )))
}

fn fibration(model: &FlagModel, pos: &mut Positions) -> Result<PropertyReport> {
    let mut t = Tally::new(Property::Fibration);
    let sys = model.system();
    let twist = model.twist();
    let compare_count =
        model.frobenius_map().kind == FrobeniusKind::Standard || model.m().is_multiple_of(2);
    let q = model.q() as u128;
    let mut reducible = 0;
    for i in GenSet::all_subsets(sys.rank()) {
        let source = pos.get(i)?.to_vec();
        for w in sys.elements()? {
            let j = f_closure(sys, i, &w, twist)?;
            if j == sys.all_generators() {
                continue;
            }
            reducible += 1;
            let wi = min_double_coset_rep(sys, i, &w, twist.apply_set(i));
            let dims_j = type_to_dims(model.n(), j);
            let base: Vec<PartialFlag> = model.rational_flags(j)?;
            let mut fibres: HashMap<PartialFlag, usize> =
                base.iter().map(|b| (b.clone(), 0)).collect();
            for (f, x) in &source {
                if *x != wi {
                    continue;
                }
                let image = truncate_map(f, &dims_j)?;
                match fibres.get_mut(&image) {
                    Some(c) => *c += 1,
                    None => t.check(false, || {
                        format!(
                            "I = {i}, w = {}: {f} lies over the non-rational {image}",
                            word(model, &w)
                        )
                    }),
                }
            }
            let sizes: HashSet<usize> = fibres.values().copied().collect();
            t.check(sizes.len() <= 1, || {
                format!(
                    "I = {i}, w = {}: fibre sizes {sizes:?} over type {j}",
                    word(model, &w)
                )
            });
            if compare_count {
                let poly = component_count_poly(sys, i, &w, twist)?;
                let expected = poly.eval(q);
                t.check(base.len() as u128 == expected, || {
                    format!(
                        "I = {i}, w = {}: {} rational type-{j} flags, polynomial {poly} gives {expected}",
                        word(model, &w),
                        base.len()
                    )
                });
            }
        }
    }
    let note = if compare_count {
        ""
    } else {
        " (base counts not compared for odd m)"
    };
    Ok(t.finish(format!(
        "{reducible} reducible cases, equal fibres over rational bases{note}"
    )))
}

fn sequences(rank: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..rank).map(move |s| {
                    let mut w = v.clone();
                    w.push(s);
                    w
                })
            })
            .collect();
    }
    out
}

fn nonempty_index_sets(len: usize) -> Vec<Vec<usize>> {
    (1u32..1 << len)
        .map(|mask| (0..len).filter(|&i| mask & (1 << i) != 0).collect())
        .collect()
}

fn hatx(model: &FlagModel, pos: &mut Positions) -> Result<PropertyReport> {
    let mut t = Tally::new(Property::Hatx);
    let sys = model.system();
    let e = sys.identity();
    let full = pos.get(GenSet::empty())?.to_vec();
    let count_of = |w: &Element| full.iter().filter(|(_, x)| x == w).count();
    let mut cache: HashMap<Vec<usize>, HashSet<Vec<PartialFlag>>> = HashMap::new();
    let mut get = |seq: &[usize]| -> Result<HashSet<Vec<PartialFlag>>> {
        if !cache.contains_key(seq) {
            let pts = model.hatx_points(seq)?;
            cache.insert(seq.to_vec(), pts.into_iter().collect());
        }
        Ok(cache[seq].clone())
    };
    let mut sizes = Vec::new();
    for s in 0..sys.rank() {
        let pts = get(&[s])?;
        let expected = count_of(&e) + count_of(&sys.generator(s)?);
        t.check(pts.len() == expected, || {
            format!(
                "|X̂(s{})| = {}, expected |X(1)| + |X(s{})| = {expected}",
                s + 1,
                pts.len(),
                s + 1
            )
        });
        sizes.push(format!("X̂(s{}) = {}", s + 1, pts.len()));
    }
    let rational: Vec<PartialFlag> = full
        .iter()
        .filter(|(_, x)| x.is_identity())
        .map(|(f, _)| f.clone())
        .collect();
    for target in sequences(sys.rank(), 2) {
        let target_pts = get(&target)?;
        for tuple in &target_pts {
            t.check(model.in_hatx(&target, tuple)?, || {
                format!("{tuple:?} fails the position test for {target:?}")
            });
        }
        for indices in nonempty_index_sets(target.len()) {
            let source: Vec<usize> = indices.iter().map(|&k| target[k]).collect();
            for tuple in get(&source)? {
                let image = model.subsequence_map_f(&tuple, &indices, &target)?;
                t.check(target_pts.contains(&image), || {
                    format!("image of a point of X̂({source:?}) under indices {indices:?} leaves X̂({target:?})")
                });
            }
            for b in &rational {
                let diagonal = vec![b.clone(); indices.len()];
                let image = model.subsequence_map_f(&diagonal, &indices, &target)?;
                t.check(image.iter().all(|x| x == b), || {
                    format!("diagonal tuple at {b} is not preserved")
                });
            }
        }
    }
    Ok(t.finish(format!(
        "{}; subsequence maps checked into length-2 targets",
        sizes.join(", ")
    )))
}

fn frobenius(model: &FlagModel) -> Result<PropertyReport> {
    let mut t = Tally::new(Property::Frobenius);
    let sys = model.system();
    let n = model.n();
    let q = model.q() as u64;
    let kind = model.frobenius_map().kind;
    // on A1 the diagram has no symmetry and the unitary type map is trivial
    let expected = match kind {
        FrobeniusKind::Unitary if n > 2 => Twist::parse(&format!("2A{}", n - 1), sys)?,
        _ => Twist::untwisted(sys),
    };
    t.check(
        model.twist().permutation() == expected.permutation(),
        || {
            format!(
                "type map {:?} differs from {:?}",
                model.twist().permutation(),
                expected.permutation()
            )
        },
    );
    for i in GenSet::all_subsets(sys.rank()) {
        let image_dims = type_to_dims(n, model.twist().apply_set(i));
        for f in model.flags(i)? {
            let ff = model.frobenius(&f);
            t.check(ff.dims() == image_dims.as_slice(), || {
                format!("F({f}) has dimensions {:?}", ff.dims())
            });
            match kind {
                FrobeniusKind::Standard => {
                    let mut g = f.clone();
                    for _ in 0..model.m() {
                        g = model.frobenius(&g);
                    }
                    t.check(g == f, || format!("F^m does not fix {f}"));
                }
                FrobeniusKind::Unitary => {
                    let twice = model.frobenius(&ff);
                    let squared = power_map(model.field(), &f, q * q);
                    t.check(twice == squared, || {
                        format!("F(F({f})) differs from the q^2 power")
                    });
                }
            }
        }
    }
    let what = match kind {
        FrobeniusKind::Standard => "F^m is the identity on flags over F_{q^m}",
        FrobeniusKind::Unitary => "F^2 is the q^2-power Frobenius; type map reverses S",
    };
    Ok(t.finish(what.into()))
}

fn orbits(model: &FlagModel, pos: &mut Positions) -> Result<PropertyReport> {
    guard::check(
        "GL_n elements",
        gl_order(model.n(), model.field().size() as u128),
    )?;
    let group = gl_elements(model.field(), model.n())?;
    let mut t = Tally::new(Property::Orbits);
    let sys = model.system();
    let mut classes = 0;
    for i in GenSet::all_subsets(sys.rank()) {
        let mut seen = HashSet::new();
        for (f0, x) in pos.get(i)?.to_vec() {
            if !seen.insert(x.clone()) {
                continue;
            }
            classes += 1;
            let (cosets, points) = model.orbit_count_with(&group, &f0)?;
            t.check(cosets == points, || {
                format!(
                    "type {i}, w = {}: {cosets} cosets, {points} points",
                    word(model, &x)
                )
            });
        }
    }
    Ok(t.finish(format!(
        "coset counts match point counts for {classes} positions"
    )))
}

fn cells(model: &FlagModel) -> Result<PropertyReport> {
    // Cells live in G(F_q), independent of the extension degree.
    let base = FlagModel::new(model.n(), model.q(), model.frobenius_map().kind, 1)?;
    let group = gl_elements(base.field(), base.n())?;
    let mut t = Tally::new(Property::Cells);
    let sys = base.system();
    let subsets: Vec<GenSet> = GenSet::all_subsets(sys.rank()).collect();
    let mut triples = 0;
    for &i in &subsets {
        for &j in &subsets {
            let mut total = 0;
            for d in double_coset_reps(sys, i, j)? {
                triples += 1;
                let c = base.cell_check_with(&group, i, &d, j)?;
                total += c.cell_size;
                t.check(c.holds, || {
                    format!(
                        "I = {i}, w = {}, J = {j}: {} mismatches",
                        word(&base, &d),
                        c.mismatches
                    )
                });
            }
            t.check(total == group.len(), || {
                format!("I = {i}, J = {j}: cells cover {total} of {}", group.len())
            });
        }
    }
    Ok(t.finish(format!(
        "{triples} triples (I, w, J) over GL_{}(F_{})",
        base.n(),
        base.q()
    )))
}
