use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;

/// A subset of the generators `S`, as a bitmask over 0-based indices.
///
/// Serializes as the sorted list of 1-based labels.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GenSet(u64);

impl GenSet {
    pub const fn empty() -> Self {
        GenSet(0)
    }

    pub fn full(rank: usize) -> Self {
        if rank >= 64 {
            GenSet(u64::MAX)
        } else {
            GenSet((1u64 << rank) - 1)
        }
    }

    pub fn single(s: usize) -> Self {
        GenSet(1 << s)
    }

    pub fn from_bits(bits: u64) -> Self {
        GenSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, s: usize) -> bool {
        s < 64 && self.0 >> s & 1 == 1
    }

    pub fn insert(&mut self, s: usize) {
        self.0 |= 1 << s;
    }

    pub fn union(self, other: GenSet) -> GenSet {
        GenSet(self.0 | other.0)
    }

    pub fn intersection(self, other: GenSet) -> GenSet {
        GenSet(self.0 & other.0)
    }

    pub fn difference(self, other: GenSet) -> GenSet {
        GenSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&s| self.contains(s))
    }

    /// Image under a permutation of generators.
    pub fn map(self, perm: &[usize]) -> GenSet {
        self.iter().map(|s| perm[s]).collect()
    }

    /// All subsets of `S` for the given rank, in increasing bitmask order.
    pub fn all_subsets(rank: usize) -> impl Iterator<Item = GenSet> {
        (0..1u64 << rank).map(GenSet)
    }

    /// All subsets of `self`.
    pub fn subsets(self) -> Vec<GenSet> {
        let mut out = Vec::with_capacity(1 << self.len());
        let mut sub = self.0;
        loop {
            out.push(GenSet(sub));
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & self.0;
        }
        out.reverse();
        out
    }

    /// Comma-separated 1-based labels; the empty string is the empty set.
    pub fn parse(input: &str, rank: usize) -> Result<GenSet, ParseError> {
        let mut out = GenSet::empty();
        let trimmed = input.trim();
        let inner_offset = input.find(trimmed).unwrap_or(0);
        let (body, offset) = match trimmed.strip_prefix('{').and_then(|t| t.strip_suffix('}')) {
            Some(inner) => (inner, inner_offset + 1),
            None => (trimmed, inner_offset),
        };
        for (pos, token) in crate::coxeter::tokens(body, |c| c == ',' || c.is_whitespace()) {
            let pos = pos + offset;
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
            out.insert(label - 1);
        }
        Ok(out)
    }

    pub fn labels(self) -> Vec<usize> {
        self.iter().map(|s| s + 1).collect()
    }
}

impl FromIterator<usize> for GenSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut out = GenSet::empty();
        for s in iter {
            out.insert(s);
        }
        out
    }
}

impl fmt::Display for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.labels().iter().map(|s| s.to_string()).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

impl Serialize for GenSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.labels().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GenSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let labels = Vec::<usize>::deserialize(deserializer)?;
        labels
            .into_iter()
            .map(|l| {
                if (1..=64).contains(&l) {
                    Ok(l - 1)
                } else {
                    Err(serde::de::Error::custom(format!("bad generator label {l}")))
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let s = GenSet::parse("1,3", 4).unwrap();
        assert_eq!(s.labels(), vec![1, 3]);
        assert_eq!(s.to_string(), "{1,3}");
        assert_eq!(GenSet::parse("", 4).unwrap(), GenSet::empty());
        assert_eq!(GenSet::parse("{2, 4}", 4).unwrap().labels(), vec![2, 4]);
        assert_eq!(GenSet::parse("1,5", 4).unwrap_err().position, 2);
        assert_eq!(GenSet::parse("1,a", 4).unwrap_err().position, 2);
    }

    #[test]
    fn subsets_enumerates_everything() {
        let s = GenSet::from_bits(0b1011);
        let subs = s.subsets();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset(s)));
        assert_eq!(subs[0], GenSet::empty());
    }

    #[test]
    fn serde_uses_labels() {
        let s = GenSet::from_bits(0b101);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, "[1,3]");
        assert_eq!(serde_json::from_str::<GenSet>(&text).unwrap(), s);
    }
}
