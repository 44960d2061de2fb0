//! Evaluation of multiple Bernoulli series `B(Φ, Λ)(v)` for the four classical
//! families: exact values, one-sided limits at non-regular points, step
//! polynomials and tope polynomials.

mod core;
mod step;

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::exact::{frac, linalg::dot, rat, Poly, Rational};
use crate::rootsys::{
    b_coset_shifts, coweight_a_shifts, d_decomposition, Arrangement, ExponentMap, Family, LatticeKind,
    RootLabel, RootSystem, WallSet,
};

pub use self::core::{Core, Side};
pub use step::{StepFactor, StepPolynomial};

/// What to compute.
#[derive(Clone, Debug, PartialEq)]
pub enum QueryMode {
    Value,
    /// Limit along `v + εδ`; `None` selects the default direction.
    Limit(Option<Vec<Rational>>),
    TopePolynomial,
    StepPolynomial,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BernoulliQuery {
    pub sys: RootSystem,
    pub lattice: LatticeKind,
    pub exponents: ExponentMap,
    /// Point in ambient coordinates (ignored for step polynomials).
    pub v: Vec<Rational>,
    pub mode: QueryMode,
}

#[derive(Clone, Debug, PartialEq)]
pub enum BernoulliOutput {
    Value(Rational),
    /// Polynomial in the ambient coordinates `v_1, v_2, …` (variable `i` is `v_{i+1}`).
    Tope(Poly),
    Step(StepPolynomial),
}

/// One weighted core evaluation at `scale · proj(v) + shift`.
struct PlanItem {
    weight: Rational,
    core: Arc<Core>,
    scale: Rational,
    /// 0-based coordinate removed before evaluation.
    drop: Option<usize>,
    shift: Vec<Rational>,
}

impl PlanItem {
    fn map_linear(&self, v: &[Rational]) -> Vec<Rational> {
        v.iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != self.drop)
            .map(|(_, x)| x * &self.scale)
            .collect()
    }

    fn map_point(&self, v: &[Rational]) -> Vec<Rational> {
        self.map_linear(v).into_iter().zip(&self.shift).map(|(a, b)| a + b).collect()
    }

    /// A core-coordinate functional pulled back to user working coordinates.
    fn pull_back(&self, row: &[Rational], user_dim: usize) -> Vec<Rational> {
        let mut out = Vec::with_capacity(user_dim);
        let mut it = row.iter();
        for i in 0..user_dim {
            if Some(i) == self.drop {
                out.push(Rational::zero());
            } else {
                out.push(it.next().cloned().unwrap_or_else(Rational::zero));
            }
        }
        out
    }
}

/// `B(Φ_s, Λ)` for fixed system, lattice and exponents.
pub struct BernoulliSeries {
    sys: RootSystem,
    lattice: LatticeKind,
    exponents: ExponentMap,
    walls: WallSet,
    items: Vec<PlanItem>,
    default_dir: Vec<Rational>,
}

fn bc_exponents(e: &ExponentMap) -> Vec<u32> {
    // B short root e_i and C long root 2e_i both sit on the coroot line of e^i
    let c = RootSystem::new_unchecked(Family::C, e.system().rank());
    c.positive_roots().into_iter().map(|l| e.get(l)).collect()
}

const PRIMES: [i64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

impl BernoulliSeries {
    pub fn new(sys: RootSystem, lattice: LatticeKind, exponents: &ExponentMap) -> Result<Self> {
        lattice.check_family(sys.family())?;
        if exponents.system() != sys {
            return Err(Error::InvalidExponents(format!(
                "exponents are for {} but the system is {}",
                exponents.system(),
                sys
            )));
        }
        let r = sys.rank();
        let zero = |n: usize| vec![Rational::zero(); n];
        let mut items = Vec::new();
        let b_items = |items: &mut Vec<PlanItem>, e: &ExponentMap| -> Result<()> {
            let core = Arc::new(Core::new(Arrangement::BC(r), bc_exponents(e))?);
            let long: u32 = e
                .entries()
                .iter()
                .filter(|(l, _)| !matches!(l, RootLabel::Axis(_)))
                .map(|(_, s)| s)
                .sum();
            let weight = Rational::new(BigInt::one() << long as usize, BigInt::one() << (r - 1));
            for lam in b_coset_shifts(r) {
                items.push(PlanItem {
                    weight: weight.clone(),
                    core: core.clone(),
                    scale: rat(1, 2),
                    drop: None,
                    shift: lam.iter().map(|x| x / rat(2, 1)).collect(),
                });
            }
            Ok(())
        };
        match (sys.family(), lattice) {
            (Family::A, LatticeKind::CorootA) | (Family::A, LatticeKind::CoweightA) => {
                let ex: Vec<u32> = exponents.entries().iter().map(|(_, s)| *s).collect();
                let core = Arc::new(Core::new(Arrangement::A(r), ex)?);
                if lattice == LatticeKind::CorootA {
                    items.push(PlanItem { weight: Rational::one(), core, scale: Rational::one(), drop: None, shift: zero(r) });
                } else {
                    for lam in coweight_a_shifts(r) {
                        items.push(PlanItem {
                            weight: rat(1, r as i64 + 1),
                            core: core.clone(),
                            scale: Rational::one(),
                            drop: None,
                            shift: lam[..r].to_vec(),
                        });
                    }
                }
            }
            (Family::C, _) => {
                let core = Arc::new(Core::new(Arrangement::BC(r), bc_exponents(exponents))?);
                items.push(PlanItem { weight: Rational::one(), core, scale: Rational::one(), drop: None, shift: zero(r) });
            }
            (Family::B, _) => b_items(&mut items, exponents)?,
            (Family::D, _) => {
                let (b, pieces) = d_decomposition(exponents)?;
                b_items(&mut items, &b)?;
                for p in pieces {
                    let core = Arc::new(Core::new(Arrangement::BC(r - 1), bc_exponents(&p.exponents))?);
                    items.push(PlanItem {
                        weight: Rational::from_integer(p.sign.into()),
                        core,
                        scale: Rational::one(),
                        drop: Some(p.k - 1),
                        shift: zero(r - 1),
                    });
                }
            }
            _ => unreachable!("lattice checked against family"),
        }
        let walls = WallSet::for_system(sys, lattice);
        let mut s = BernoulliSeries { sys, lattice, exponents: exponents.clone(), walls, items, default_dir: Vec::new() };
        s.default_dir = s.find_default_direction()?;
        Ok(s)
    }

    pub fn system(&self) -> RootSystem {
        self.sys
    }

    pub fn lattice(&self) -> LatticeKind {
        self.lattice
    }

    pub fn exponents(&self) -> &ExponentMap {
        &self.exponents
    }

    fn direction_problem(&self, d: &[Rational]) -> Option<String> {
        if let Some(w) = self.walls.degenerate(d) {
            return Some(format!("direction lies on a wall: {}", WallSet::describe(w, d)));
        }
        for it in &self.items {
            let dd = it.map_linear(d);
            for b in it.core.bases() {
                if b.coeffs(&dd).iter().any(Zero::is_zero) {
                    return Some(format!("direction has a zero coordinate in basis {:?}", b.names));
                }
            }
        }
        None
    }

    fn find_default_direction(&self) -> Result<Vec<Rational>> {
        let r = self.sys.rank();
        let mut d: Vec<Rational> = (0..r).map(|i| rat(1, PRIMES[i % PRIMES.len()] + (i / PRIMES.len()) as i64 * 41)).collect();
        for step in 0..64 * r {
            if self.direction_problem(&d).is_none() {
                return Ok(d);
            }
            d[step % r] /= rat(2, 1);
        }
        Err(Error::GenericityFailure("no generic default direction found".into()))
    }

    /// The default limit direction in ambient coordinates.
    pub fn default_direction(&self) -> Vec<Rational> {
        self.sys.from_work(&self.default_dir)
    }

    /// `Ok(())` when `v` (ambient) is regular, else the violated wall.
    pub fn check_regular(&self, v: &[Rational]) -> Result<()> {
        let w = self.sys.to_work(v)?;
        match self.walls.violated(&w) {
            None => Ok(()),
            Some(wall) => Err(Error::NonRegularPoint { wall: WallSet::describe(wall, &w) }),
        }
    }

    pub fn is_regular(&self, v: &[Rational]) -> Result<bool> {
        let w = self.sys.to_work(v)?;
        Ok(self.walls.violated(&w).is_none())
    }

    fn eval_work(&self, w: &[Rational], dir: &[Rational]) -> Result<Rational> {
        let mut total = Rational::zero();
        for it in &self.items {
            let p = it.map_point(w);
            let d = it.map_linear(dir);
            total += &it.weight * it.core.eval(&p, &Side::Direction(&d))?;
        }
        Ok(total)
    }

    /// Exact value at a regular point.
    pub fn value(&self, v: &[Rational]) -> Result<Rational> {
        self.check_regular(v)?;
        let w = self.sys.to_work(v)?;
        self.eval_work(&w, &self.default_dir)
    }

    /// `lim_{ε→0+} B(v + εδ)`.
    pub fn limit(&self, v: &[Rational], direction: Option<&[Rational]>) -> Result<Rational> {
        let w = self.sys.to_work(v)?;
        let d = match direction {
            None => self.default_dir.clone(),
            Some(d) => {
                let d = self.sys.to_work(d)?;
                if let Some(msg) = self.direction_problem(&d) {
                    return Err(Error::GenericityFailure(msg));
                }
                d
            }
        };
        self.eval_work(&w, &d)
    }

    /// The step polynomial representing the series on all of `V_reg`.
    pub fn step_polynomial(&self) -> Result<StepPolynomial> {
        let n = self.sys.ambient_dim();
        let r = self.sys.rank();
        let mut factors: Vec<StepFactor> = Vec::new();
        let mut index: FxHashMap<StepFactor, u32> = FxHashMap::default();
        let mut total = Poly::zero();
        for it in &self.items {
            let mut symbols: Vec<Vec<u32>> = Vec::new();
            for b in it.core.bases() {
                let shift_c = b.coeffs(&it.shift);
                let mut sy = Vec::with_capacity(b.rank());
                for (row, sh) in b.to_sigma.iter().zip(shift_c) {
                    let mut form = it.pull_back(row, r);
                    if self.sys.family() == Family::A {
                        form.push(Rational::zero());
                    }
                    let f = StepFactor { form, scale: it.scale.clone(), shift: frac(&sh) };
                    let id = *index.entry(f.clone()).or_insert_with(|| {
                        factors.push(f);
                        (factors.len() - 1) as u32
                    });
                    sy.push(id);
                }
                symbols.push(sy);
            }
            let p = it.core.eval_symbolic(&symbols)?;
            total.add_assign_poly(&p.scale(&it.weight));
        }
        Ok(StepPolynomial { dim: n, factors, poly: total })
    }

    /// The polynomial agreeing with the series on the tope containing `sample`.
    pub fn tope_polynomial(&self, sample: &[Rational]) -> Result<Poly> {
        self.check_regular(sample)?;
        let step = self.step_polynomial()?;
        let dir = self.default_direction();
        let mut images = Vec::with_capacity(step.factors.len());
        for f in &step.factors {
            let x0 = f.argument(sample);
            let u0 = if x0.is_integer() {
                let d = &f.scale * dot(&f.form, &dir);
                if d.is_zero() {
                    return Err(Error::GenericityFailure("default direction is degenerate".into()));
                }
                if d.is_positive() { Rational::zero() } else { Rational::one() }
            } else {
                frac(&x0)
            };
            let lin: Vec<Rational> = f.form.iter().map(|c| c * &f.scale).collect();
            images.push(Poly::affine(&lin, &(&f.shift - (x0 - u0))));
        }
        Ok(step.poly.compose(&|j| images[j as usize].clone()))
    }
}

/// Dispatches a query.
pub fn bernoulli_eval(q: &BernoulliQuery) -> Result<BernoulliOutput> {
    let s = BernoulliSeries::new(q.sys, q.lattice, &q.exponents)?;
    match &q.mode {
        QueryMode::Value => s.value(&q.v).map(BernoulliOutput::Value),
        QueryMode::Limit(d) => s.limit(&q.v, d.as_deref()).map(BernoulliOutput::Value),
        QueryMode::TopePolynomial => s.tope_polynomial(&q.v).map(BernoulliOutput::Tope),
        QueryMode::StepPolynomial => s.step_polynomial().map(BernoulliOutput::Step),
    }
}


