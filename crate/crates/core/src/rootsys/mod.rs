//! Classical root systems: labels, coroots, exponent maps, lattices, Weyl groups
//! and the diagonal sets of flag bases.

mod bases;
mod lattice;
mod weyl;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat, Rational};

pub use bases::{a_flag_bases, bc_flag_bases, flag_bases, Arrangement, OrderedBasis};
pub use lattice::{b_coset_shifts, coweight_a_shifts, d_decomposition, DPiece, LatticeKind, Wall, WallSet};
pub use weyl::{weyl_elements, WeylElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::Parse(format!("unknown family `{other}`"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        write!(f, "{c}")
    }
}

/// A positive root, indices 1-based with `i < j`.
///
/// `Axis(i)` is the root on the single index `i`: `e_i` in type B, `2e_i` in type C.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootLabel {
    Diff(usize, usize),
    Sum(usize, usize),
    Axis(usize),
}

/// A classical root system of a given rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootSystem {
    family: Family,
    rank: usize,
}

impl RootSystem {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let min = match family {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 2,
        };
        if rank < min {
            return Err(Error::InvalidRank { family: family.to_string(), rank });
        }
        Ok(RootSystem { family, rank })
    }

    /// Rank-1 B and C systems, used inside the type D decomposition.
    pub(crate) fn new_unchecked(family: Family, rank: usize) -> Self {
        RootSystem { family, rank }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            _ => self.rank,
        }
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    /// Positive roots in canonical order.
    pub fn positive_roots(&self) -> Vec<RootLabel> {
        let r = self.rank;
        let n = self.ambient_dim();
        let diffs = || {
            (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| RootLabel::Diff(i, j)))
        };
        let sums = || (1..=r).flat_map(move |i| (i + 1..=r).map(move |j| RootLabel::Sum(i, j)));
        let axes = || (1..=r).map(RootLabel::Axis);
        match self.family {
            Family::A => diffs().collect(),
            Family::B => diffs().chain(sums()).chain(axes()).collect(),
            Family::C => axes().chain(sums()).chain(diffs()).collect(),
            Family::D => diffs().chain(sums()).collect(),
        }
    }

    pub fn num_positive_roots(&self) -> usize {
        let r = self.rank;
        match self.family {
            Family::A => r * (r + 1) / 2,
            Family::B | Family::C => r * r,
            Family::D => r * (r - 1),
        }
    }

    pub fn weyl_order(&self) -> u64 {
        let r = self.rank as u64;
        let fact = |n: u64| (1..=n).product::<u64>();
        match self.family {
            Family::A => fact(r + 1),
            Family::B | Family::C => (1u64 << r) * fact(r),
            Family::D => (1u64 << (r - 1)) * fact(r),
        }
    }

    pub fn contains(&self, label: RootLabel) -> bool {
        let n = self.ambient_dim();
        match (self.family, label) {
            (_, RootLabel::Diff(i, j)) => 1 <= i && i < j && j <= n,
            (Family::A, _) => false,
            (_, RootLabel::Sum(i, j)) => 1 <= i && i < j && j <= self.rank,
            (Family::D, RootLabel::Axis(_)) => false,
            (_, RootLabel::Axis(i)) => 1 <= i && i <= self.rank,
        }
    }

    /// The root as a vector of `h*` in ambient coordinates.
    pub fn root_vector(&self, label: RootLabel) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.ambient_dim()];
        match label {
            RootLabel::Diff(i, j) => {
                v[i - 1] = Rational::one();
                v[j - 1] = -Rational::one();
            }
            RootLabel::Sum(i, j) => {
                v[i - 1] = Rational::one();
                v[j - 1] = Rational::one();
            }
            RootLabel::Axis(i) => {
                v[i - 1] = if self.family == Family::C { rat(2, 1) } else { Rational::one() };
            }
        }
        v
    }

    /// The coroot `H_α` in ambient coordinates.
    pub fn coroot_vector(&self, label: RootLabel) -> Vec<Rational> {
        let mut v = self.root_vector(label);
        if let RootLabel::Axis(i) = label {
            v[i - 1] = if self.family == Family::B { rat(2, 1) } else { Rational::one() };
        }
        v
    }

    /// Root label text: `e1-e2`, `e1+e2`, `e1` (type B) or `2e1` (type C).
    pub fn label_string(&self, label: RootLabel) -> String {
        match label {
            RootLabel::Diff(i, j) => format!("e{i}-e{j}"),
            RootLabel::Sum(i, j) => format!("e{i}+e{j}"),
            RootLabel::Axis(i) if self.family == Family::C => format!("2e{i}"),
            RootLabel::Axis(i) => format!("e{i}"),
        }
    }

    /// Coroot text over the dual basis, e.g. `2e^1` for the B root `e1`.
    pub fn coroot_string(&self, label: RootLabel) -> String {
        match label {
            RootLabel::Diff(i, j) => format!("e^{i}-e^{j}"),
            RootLabel::Sum(i, j) => format!("e^{i}+e^{j}"),
            RootLabel::Axis(i) if self.family == Family::B => format!("2e^{i}"),
            RootLabel::Axis(i) => format!("e^{i}"),
        }
    }

    /// Parses a root label. For types B and C both `e<i>` and `2e<i>` name the
    /// unique positive root supported on index `i`.
    pub fn parse_label(&self, s: &str) -> Result<RootLabel> {
        let bad = || Error::InvalidLabel(s.to_string());
        let idx = |t: &str| -> Result<usize> {
            let t = t.strip_prefix('e').ok_or_else(bad)?;
            let i: usize = t.parse().map_err(|_| bad())?;
            Ok(i)
        };
        let t = s.trim();
        if t.is_empty() {
            return Err(bad());
        }
        let label = if let Some(p) = t[1..].find(['-', '+']).map(|p| p + 1) {
            let (a, b) = (&t[..p], &t[p + 1..]);
            let (i, j) = (idx(a)?, idx(b)?);
            if t.as_bytes()[p] == b'-' {
                RootLabel::Diff(i, j)
            } else {
                RootLabel::Sum(i, j)
            }
        } else if let Some(rest) = t.strip_prefix('2') {
            RootLabel::Axis(idx(rest)?)
        } else {
            RootLabel::Axis(idx(t)?)
        };
        if self.contains(label) {
            Ok(label)
        } else {
            Err(bad())
        }
    }

    /// Converts an ambient vector of `V` to working coordinates (type A drops the
    /// last coordinate after checking the sum-zero condition).
    pub fn to_work(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.ambient_dim();
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: v.len() });
        }
        if self.family == Family::A {
            let s: Rational = v.iter().sum();
            if !s.is_zero() {
                return Err(Error::InvalidArgument(
                    "type A vectors must have coordinates summing to zero".into(),
                ));
            }
            return Ok(v[..self.rank].to_vec());
        }
        Ok(v.to_vec())
    }

    pub fn from_work(&self, w: &[Rational]) -> Vec<Rational> {
        let mut v = w.to_vec();
        if self.family == Family::A {
            let s: Rational = w.iter().sum();
            v.push(-s);
        }
        v
    }

    /// Coroot in working coordinates.
    pub fn coroot_work(&self, label: RootLabel) -> Vec<Rational> {
        let v = self.coroot_vector(label);
        match self.family {
            Family::A => v[..self.rank].to_vec(),
            _ => v,
        }
    }

    /// Simple roots in the standard order.
    pub fn simple_roots(&self) -> Vec<RootLabel> {
        let r = self.rank;
        let mut out: Vec<RootLabel> = (1..r).map(|i| RootLabel::Diff(i, i + 1)).collect();
        match self.family {
            Family::A => out.push(RootLabel::Diff(r, r + 1)),
            Family::B | Family::C => out.push(RootLabel::Axis(r)),
            Family::D => out.push(RootLabel::Sum(r - 1, r)),
        }
        out
    }

    pub fn highest_root(&self) -> RootLabel {
        match self.family {
            Family::A => RootLabel::Diff(1, self.rank + 1),
            Family::B | Family::D => RootLabel::Sum(1, 2),
            Family::C => RootLabel::Axis(1),
        }
    }

    /// `⟨α, h⟩` for `h` in ambient coordinates.
    pub fn root_pairing(&self, label: RootLabel, h: &[Rational]) -> Rational {
        crate::exact::linalg::dot(&self.root_vector(label), h)
    }

    /// Expresses `Σ a_i H_{α_i}` over the simple coroots in ambient coordinates.
    pub fn from_simple_coroot_coords(&self, a: &[Rational]) -> Result<Vec<Rational>> {
        if a.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: a.len() });
        }
        let mut v = vec![Rational::zero(); self.ambient_dim()];
        for (ai, l) in a.iter().zip(self.simple_roots()) {
            for (x, c) in v.iter_mut().zip(self.coroot_vector(l)) {
                *x += ai * c;
            }
        }
        Ok(v)
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Exponents `s_α` keyed by positive root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentMap {
    sys: RootSystem,
    map: BTreeMap<RootLabel, u32>,
}

impl ExponentMap {
    pub fn uniform(sys: RootSystem, m: u32) -> Self {
        ExponentMap { sys, map: sys.positive_roots().into_iter().map(|l| (l, m)).collect() }
    }

    /// Builds from `(label, exponent)` pairs; unmentioned roots get 0.
    pub fn from_pairs(sys: RootSystem, pairs: &[(RootLabel, u32)]) -> Result<Self> {
        let mut e = ExponentMap::uniform(sys, 0);
        let mut seen = std::collections::BTreeSet::new();
        for &(l, s) in pairs {
            if !sys.contains(l) {
                return Err(Error::InvalidLabel(format!("{l:?}")));
            }
            if !seen.insert(l) {
                return Err(Error::InvalidExponents(format!(
                    "root {} given twice",
                    sys.label_string(l)
                )));
            }
            e.map.insert(l, s);
        }
        Ok(e)
    }

    /// Parses `label=value,label=value`.
    pub fn parse(sys: RootSystem, text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for item in text.split(',').filter(|s| !s.trim().is_empty()) {
            let (l, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected label=value, got `{item}`")))?;
            let l = sys.parse_label(l)?;
            let v: u32 = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent `{v}`")))?;
            pairs.push((l, v));
        }
        ExponentMap::from_pairs(sys, &pairs)
    }

    /// Positional exponents in the canonical root order.
    pub fn from_canonical_list(sys: RootSystem, values: &[u32]) -> Result<Self> {
        let roots = sys.positive_roots();
        if values.len() != roots.len() {
            return Err(Error::DimensionMismatch { expected: roots.len(), got: values.len() });
        }
        Ok(ExponentMap { sys, map: roots.into_iter().zip(values.iter().copied()).collect() })
    }

    pub fn system(&self) -> RootSystem {
        self.sys
    }

    pub fn get(&self, l: RootLabel) -> u32 {
        self.map.get(&l).copied().unwrap_or(0)
    }

    /// Total degree `S = Σ s_α`.
    pub fn total(&self) -> u32 {
        self.map.values().sum()
    }

    /// Entries in canonical root order.
    pub fn entries(&self) -> Vec<(RootLabel, u32)> {
        self.sys.positive_roots().into_iter().map(|l| (l, self.get(l))).collect()
    }

    pub fn to_text(&self) -> String {
        self.entries()
            .iter()
            .map(|&(l, s)| format!("{}={}", self.sys.label_string(l), s))
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        for r in 2..=5 {
            for f in [Family::A, Family::B, Family::C, Family::D] {
                let s = RootSystem::new(f, r).unwrap();
                assert_eq!(s.positive_roots().len(), s.num_positive_roots());
            }
        }
        assert!(RootSystem::new(Family::C, 1).is_err());
        assert!(RootSystem::new(Family::A, 0).is_err());
    }

    #[test]
    fn labels_roundtrip() {
        for f in [Family::A, Family::B, Family::C, Family::D] {
            let s = RootSystem::new(f, 3).unwrap();
            for l in s.positive_roots() {
                assert_eq!(s.parse_label(&s.label_string(l)).unwrap(), l);
            }
        }
        let c2 = RootSystem::new(Family::C, 2).unwrap();
        assert_eq!(c2.parse_label("e1").unwrap(), RootLabel::Axis(1));
        assert_eq!(c2.parse_label("2e1").unwrap(), RootLabel::Axis(1));
        assert!(c2.parse_label("e2-e1").is_err());
        assert!(c2.parse_label("e3").is_err());
        let d3 = RootSystem::new(Family::D, 3).unwrap();
        assert!(d3.parse_label("e1").is_err());
    }

    #[test]
    fn canonical_orders() {
        let c2 = RootSystem::new(Family::C, 2).unwrap();
        let names: Vec<String> = c2.positive_roots().iter().map(|&l| c2.label_string(l)).collect();
        assert_eq!(names, ["2e1", "2e2", "e1+e2", "e1-e2"]);
        let b2 = RootSystem::new(Family::B, 2).unwrap();
        let co: Vec<String> = b2.positive_roots().iter().map(|&l| b2.coroot_string(l)).collect();
        assert_eq!(co, ["e^1-e^2", "e^1+e^2", "2e^1", "2e^2"]);
    }

    #[test]
    fn exponent_parsing() {
        let c2 = RootSystem::new(Family::C, 2).unwrap();
        let e = ExponentMap::parse(c2, "e1=2,e2=1,e1+e2=1,e1-e2=1").unwrap();
        assert_eq!(e.get(RootLabel::Axis(1)), 2);
        assert_eq!(e.total(), 5);
        assert!(ExponentMap::parse(c2, "e1=2,2e1=1").is_err());
    }
}
