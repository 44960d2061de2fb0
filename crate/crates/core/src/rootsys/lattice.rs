use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExponentMap, Family, RootLabel, RootSystem};
use crate::error::{Error, Result};
use crate::exact::linalg::{inverse, mat_vec, nullspace, transpose, Matrix};
use crate::exact::{fmt_rational, rat, Rational};

/// The lattices `Λ` on which series are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LatticeKind {
    CorootA,
    CoweightA,
    CorootB,
    CorootC,
    CorootD,
}

impl LatticeKind {
    pub fn name(&self) -> &'static str {
        match self {
            LatticeKind::CorootA => "coroot-A",
            LatticeKind::CoweightA => "coweight-A",
            LatticeKind::CorootB => "coroot-B",
            LatticeKind::CorootC => "coroot-C",
            LatticeKind::CorootD => "coroot-D",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "coroot-A" => Ok(LatticeKind::CorootA),
            "coweight-A" => Ok(LatticeKind::CoweightA),
            "coroot-B" => Ok(LatticeKind::CorootB),
            "coroot-C" => Ok(LatticeKind::CorootC),
            "coroot-D" => Ok(LatticeKind::CorootD),
            other => Err(Error::Parse(format!("unknown lattice `{other}`"))),
        }
    }

    /// The coroot lattice of a family.
    pub fn coroot(f: Family) -> Self {
        match f {
            Family::A => LatticeKind::CorootA,
            Family::B => LatticeKind::CorootB,
            Family::C => LatticeKind::CorootC,
            Family::D => LatticeKind::CorootD,
        }
    }

    pub fn check_family(&self, f: Family) -> Result<()> {
        let ok = matches!(
            (self, f),
            (LatticeKind::CorootA | LatticeKind::CoweightA, Family::A)
                | (LatticeKind::CorootB, Family::B)
                | (LatticeKind::CorootC, Family::C)
                | (LatticeKind::CorootD, Family::D)
        );
        if ok {
            Ok(())
        } else {
            Err(Error::UnsupportedLattice { family: f.to_string(), lattice: self.name().into() })
        }
    }

    /// Lattice basis in working coordinates: simple coroots, or fundamental
    /// coweights for the coweight lattice of type A.
    pub fn basis(&self, sys: RootSystem) -> Vec<Vec<Rational>> {
        let r = sys.rank();
        match self {
            LatticeKind::CoweightA => (1..=r)
                .map(|i| {
                    (1..=r)
                        .map(|k| {
                            let base = if k <= i { Rational::one() } else { Rational::zero() };
                            base - rat(i as i64, r as i64 + 1)
                        })
                        .collect()
                })
                .collect(),
            _ => sys.simple_roots().into_iter().map(|l| sys.coroot_work(l)).collect(),
        }
    }
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// An admissible wall through the origin with its primitive integral normal.
#[derive(Clone, Debug, PartialEq)]
pub struct Wall {
    /// Normal in the basis of the dual lattice `Γ`.
    pub normal: Vec<BigInt>,
    /// The same normal as a functional on working coordinates.
    pub functional: Vec<Rational>,
}

impl Wall {
    pub fn eval(&self, v: &[Rational]) -> Rational {
        crate::exact::linalg::dot(&self.functional, v)
    }
}

/// All walls of an arrangement relative to a lattice.
#[derive(Clone, Debug)]
pub struct WallSet {
    pub walls: Vec<Wall>,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn primitive(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let mut out: Vec<BigInt> = ints.into_iter().map(|x| x / &g).collect();
    if out.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        out.iter_mut().for_each(|x| *x = -x.clone());
    }
    out
}

impl WallSet {
    /// Walls spanned by `r-1` independent equations, normals primitive in the dual
    /// of the lattice spanned by `basis` (all in working coordinates).
    pub fn new(equations: &[Vec<Rational>], basis: &[Vec<Rational>]) -> Self {
        let r = basis.len();
        let lmat: Matrix = transpose(&basis.to_vec());
        let linv = inverse(&lmat).expect("lattice basis is a basis");
        let eq_l: Vec<Vec<Rational>> = equations.iter().map(|e| mat_vec(&linv, e)).collect();
        let mut seen = BTreeSet::new();
        let mut walls = Vec::new();
        for subset in combinations(eq_l.len(), r.saturating_sub(1)) {
            let rows: Vec<Vec<Rational>> = subset.iter().map(|&i| eq_l[i].clone()).collect();
            let ns = nullspace(&rows, r);
            if ns.len() != 1 {
                continue;
            }
            let k = primitive(&ns[0]);
            if !seen.insert(k.clone()) {
                continue;
            }
            let kr: Vec<Rational> = k.iter().map(|x| Rational::from_integer(x.clone())).collect();
            let functional = mat_vec(&transpose(&linv), &kr);
            walls.push(Wall { normal: k, functional });
        }
        WallSet { walls }
    }

    /// Walls of the arrangement of `sys` relative to `lattice`.
    pub fn for_system(sys: RootSystem, lattice: LatticeKind) -> Self {
        let eq: Vec<Vec<Rational>> =
            sys.positive_roots().into_iter().map(|l| sys.coroot_work(l)).collect();
        WallSet::new(&eq, &lattice.basis(sys))
    }

    /// First wall containing a translate through `v`, i.e. `⟨γ_W, v⟩ ∈ Z`.
    pub fn violated(&self, v: &[Rational]) -> Option<&Wall> {
        self.walls.iter().find(|w| w.eval(v).is_integer())
    }

    /// First wall on which the direction `δ` has zero pairing.
    pub fn degenerate(&self, delta: &[Rational]) -> Option<&Wall> {
        self.walls.iter().find(|w| w.eval(delta).is_zero())
    }

    pub fn describe(w: &Wall, v: &[Rational]) -> String {
        let n: Vec<String> = w.normal.iter().map(|x| x.to_string()).collect();
        format!("<gamma, v> = {} for gamma = [{}] in the dual lattice basis", fmt_rational(&w.eval(v)), n.join(","))
    }
}

/// `λ_j = j ξ/(r+1)`, `ξ = Σ_{j≤r}(e^j - e^{r+1})`, in ambient coordinates.
pub fn coweight_a_shifts(r: usize) -> Vec<Vec<Rational>> {
    (0..=r)
        .map(|j| {
            let c = rat(j as i64, r as i64 + 1);
            let mut v = vec![c.clone(); r + 1];
            v[r] = -c * Rational::from_integer(BigInt::from(r));
            v
        })
        .collect()
}

/// Representatives of `Q̌_B / 2Z^r`: sums of an even number of distinct `e^i`.
pub fn b_coset_shifts(r: usize) -> Vec<Vec<Rational>> {
    (0u32..(1 << r))
        .filter(|m| m.count_ones() % 2 == 0)
        .map(|m| (0..r).map(|i| if m >> i & 1 == 1 { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

/// One correction term of the type D reduction: `sign · B(C_{r-1}, exps)(i_k(v))`.
#[derive(Clone, Debug, PartialEq)]
pub struct DPiece {
    /// 1-based coordinate dropped by `i_k`.
    pub k: usize,
    pub sign: i8,
    pub exponents: ExponentMap,
}

/// Splits type D exponents into the type B exponents (zero on short roots) and
/// the rank `r-1` type C corrections supported on `γ_k = 0`.
pub fn d_decomposition(s: &ExponentMap) -> Result<(ExponentMap, Vec<DPiece>)> {
    let sys = s.system();
    if sys.family() != Family::D {
        return Err(Error::InvalidArgument("d_decomposition needs type D exponents".into()));
    }
    let r = sys.rank();
    let bsys = RootSystem::new_unchecked(Family::B, r);
    let pairs: Vec<(RootLabel, u32)> = s.entries();
    let b = ExponentMap::from_pairs(bsys, &pairs)?;
    let csys = RootSystem::new_unchecked(Family::C, r - 1);
    let mut pieces = Vec::new();
    for k in 1..=r {
        let renum = |i: usize| if i < k { i } else { i - 1 };
        let mut cp: Vec<(RootLabel, u32)> = Vec::new();
        let mut flips = 0u32;
        for &(l, e) in &pairs {
            match l {
                RootLabel::Diff(i, j) | RootLabel::Sum(i, j) if i == k || j == k => {
                    if matches!(l, RootLabel::Diff(..)) && i == k {
                        flips += e;
                    }
                    let other = if i == k { j } else { i };
                    cp.push((RootLabel::Axis(renum(other)), e));
                }
                RootLabel::Diff(i, j) => cp.push((RootLabel::Diff(renum(i), renum(j)), e)),
                RootLabel::Sum(i, j) => cp.push((RootLabel::Sum(renum(i), renum(j)), e)),
                RootLabel::Axis(_) => unreachable!("type D has no axis roots"),
            }
        }
        // merge the two contributions landing on each axis root
        let mut merged: std::collections::BTreeMap<RootLabel, u32> = Default::default();
        for (l, e) in cp {
            *merged.entry(l).or_insert(0) += e;
        }
        let merged: Vec<(RootLabel, u32)> = merged.into_iter().collect();
        let exponents = ExponentMap::from_pairs(csys, &merged)?;
        pieces.push(DPiece { k, sign: if flips % 2 == 1 { -1 } else { 1 }, exponents });
    }
    Ok((b, pieces))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regularity_examples() {
        let c2 = RootSystem::new(Family::C, 2).unwrap();
        let w = WallSet::for_system(c2, LatticeKind::CorootC);
        assert!(w.violated(&[rat(1, 15), rat(1, 30)]).is_none());
        assert!(w.violated(&[rat(1, 2), rat(1, 2)]).is_some());
        let a2 = RootSystem::new(Family::A, 2).unwrap();
        let w = WallSet::for_system(a2, LatticeKind::CorootA);
        assert!(w.violated(&[rat(0, 1), rat(0, 1)]).is_some());
    }

    #[test]
    fn cosets() {
        assert_eq!(b_coset_shifts(2).len(), 2);
        assert_eq!(b_coset_shifts(4).len(), 8);
        let a = coweight_a_shifts(2);
        assert_eq!(a[1], vec![rat(1, 3), rat(1, 3), rat(-2, 3)]);
    }

    #[test]
    fn d_signs_uniform() {
        for m in 1..=3u32 {
            let d3 = RootSystem::new(Family::D, 3).unwrap();
            let (_, pieces) = d_decomposition(&ExponentMap::uniform(d3, m)).unwrap();
            for p in pieces {
                let expect = if ((3 - p.k) as u32 * m) % 2 == 1 { -1 } else { 1 };
                assert_eq!(p.sign, expect);
                assert_eq!(p.exponents.total(), 6 * m);
            }
        }
    }

    #[test]
    fn d2_merge() {
        let d2 = RootSystem::new(Family::D, 2).unwrap();
        let s = ExponentMap::from_pairs(d2, &[(RootLabel::Diff(1, 2), 3), (RootLabel::Sum(1, 2), 4)]).unwrap();
        let (_, pieces) = d_decomposition(&s).unwrap();
        assert_eq!(pieces[1].exponents.get(RootLabel::Axis(1)), 7);
        assert_eq!(pieces[0].sign, -1);
    }
}
