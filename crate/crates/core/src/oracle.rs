//! Brute-force validation of the residue engine: truncated lattice sums of the
//! defining series in floating point.
//!
//! `γ = Σ n_i γ_i` runs over the box `|n_i| ≤ M` in the basis of `Λ*` dual to
//! the lattice basis of [`LatticeKind::basis`] (fundamental weights for the
//! coroot lattices, simple roots for the coweight lattice). Pairs `±γ` are
//! conjugate, so only half of the box is visited and twice the real part is kept.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{frac, linalg, to_f64, Rational};
use crate::rootsys::{ExponentMap, LatticeKind, RootSystem};

#[derive(Clone, Debug, PartialEq)]
pub struct OracleConfig {
    /// Box radius `M`.
    pub radius: u64,
    /// Combine `S(M)`, `S(M/2)`, `S(M/4)` to cancel the `1/M` and `1/M²` tail terms.
    pub extrapolate: bool,
    /// Number of slabs along the first coordinate summed independently.
    pub chunks: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { radius: 2000, extrapolate: true, chunks: 64 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleValue {
    /// Extrapolated value when requested, otherwise the raw box sum.
    pub value: f64,
    /// `S(M)`.
    pub raw: f64,
    pub half_radius: f64,
    pub quarter_radius: f64,
    /// `|value - S(M/2)|`, a rough size of what the box misses.
    pub tail_estimate: f64,
    pub points: u64,
}

/// Compensated accumulator (Neumaier); the running error term doubles the
/// mantissa of a plain `f64` sum.
#[derive(Clone, Copy, Debug, Default)]
struct Acc {
    sum: f64,
    comp: f64,
}

impl Acc {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn merge(&mut self, other: &Acc) {
        self.add(other.sum);
        self.add(other.comp);
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Integer data of the summand in the dual basis.
struct Summand {
    rank: usize,
    /// `(coefficients of ⟨φ, γ⟩ in n, exponent)`.
    forms: Vec<(Vec<i64>, i32)>,
    /// `⟨v, γ_i⟩ mod 1` as `num_i / den`.
    phase_num: Vec<i64>,
    phase_den: i64,
    total: u32,
}

fn lattice_coords(sys: RootSystem, lattice: LatticeKind, x: &[Rational]) -> Result<Vec<Rational>> {
    let basis = lattice.basis(sys);
    let cols = linalg::transpose(&basis);
    let inv = linalg::inverse(&cols).ok_or_else(|| Error::Internal("singular lattice basis".into()))?;
    Ok(linalg::mat_vec(&inv, x))
}

fn prepare(sys: RootSystem, lattice: LatticeKind, s: &ExponentMap, v: &[Rational]) -> Result<Summand> {
    lattice.check_family(sys.family())?;
    let r = sys.rank();
    let mut forms: Vec<(Vec<i64>, i32)> = Vec::new();
    for (label, e) in s.entries() {
        if e == 0 {
            continue;
        }
        let c = lattice_coords(sys, lattice, &sys.coroot_work(label))?;
        let ints: Option<Vec<i64>> =
            c.iter().map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None }).collect();
        let ints = ints.ok_or_else(|| Error::Internal("coroot is not in the lattice".into()))?;
        forms.push((ints, e as i32));
    }
    if forms.is_empty() {
        return Err(Error::OracleNotApplicable("all exponents are zero".into()));
    }
    let rows: Vec<Vec<Rational>> =
        forms.iter().map(|(c, _)| c.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect();
    if linalg::rank(&rows) < r {
        return Err(Error::OracleNotApplicable("forms with positive exponent do not span".into()));
    }
    // total exponent per hyperplane (parallel forms merged)
    let mut planes: Vec<(Vec<i64>, i32)> = Vec::new();
    for (c, e) in &forms {
        let g = c.iter().fold(0i64, |a, &b| a.gcd(&b));
        let lead = c.iter().find(|x| **x != 0).copied().unwrap_or(1).signum();
        let prim: Vec<i64> = c.iter().map(|x| x / g * lead).collect();
        match planes.iter_mut().find(|(p, _)| *p == prim) {
            Some(p) => p.1 += e,
            None => planes.push((prim, *e)),
        }
    }
    if let Some((_, e)) = planes.iter().find(|(_, e)| *e < 2) {
        return Err(Error::OracleNotApplicable(format!(
            "a hyperplane carries total exponent {e} < 2; the series is not absolutely convergent"
        )));
    }
    let work = sys.to_work(v)?;
    let phases: Vec<Rational> = lattice_coords(sys, lattice, &work)?.iter().map(frac).collect();
    let den = phases.iter().fold(num_bigint::BigInt::from(1), |a, p| a.lcm(p.denom()));
    let phase_den = den
        .to_i64()
        .filter(|d| *d < 1 << 40)
        .ok_or_else(|| Error::OracleNotApplicable("point has too large a denominator".into()))?;
    let phase_num = phases
        .iter()
        .map(|p| (p * Rational::from_integer(den.clone())).to_integer().to_i64().unwrap())
        .collect();
    let total = forms.iter().map(|(_, e)| *e as u32).sum();
    Ok(Summand { rank: r, forms, phase_num, phase_den, total })
}

impl Summand {
    /// Real part of `e^{2iπ⟨v,γ⟩} i^{-S} / Π⟨φ,γ⟩^{s}` without the `(2π)^{-S}` factor.
    fn term(&self, n: &[i64]) -> f64 {
        let mut mag = 1.0f64;
        for (c, e) in &self.forms {
            let x: i64 = c.iter().zip(n).map(|(a, b)| a * b).sum();
            if x == 0 {
                return 0.0;
            }
            mag *= (x as f64).powi(-e);
        }
        let mut ph: i64 = 0;
        for (p, k) in self.phase_num.iter().zip(n) {
            ph = (ph + (p * k).rem_euclid(self.phase_den)) % self.phase_den;
        }
        // cos(2π ph/den - Sπ/2)
        let quarter = (self.total % 4) as i64;
        let ang = 2.0 * std::f64::consts::PI * (ph as f64 / self.phase_den as f64);
        let trig = match quarter {
            0 => ang.cos(),
            1 => ang.sin(),
            2 => -ang.cos(),
            _ => -ang.sin(),
        };
        trig * mag
    }

    /// Sums over the half box with first nonzero coordinate positive and
    /// `n_1 ∈ slab`, binned by `max |n_i|`: `≤ M/4`, `≤ M/2`, `≤ M`.
    fn slab(&self, lo: i64, hi: i64, m: i64) -> ([Acc; 3], u64) {
        let r = self.rank;
        let mut bins = [Acc::default(); 3];
        let mut count = 0u64;
        let mut n = vec![0i64; r];
        for first in lo..hi {
            n[0] = first;
            // remaining coordinates
            let rest = r - 1;
            if rest == 0 {
                if first > 0 {
                    let t = self.term(&n);
                    bins[bin(first, m)].add(t);
                    count += 1;
                }
                continue;
            }
            for i in 1..r {
                n[i] = -m;
            }
            if first == 0 {
                // first coordinate zero: restrict to the half space of the rest
                continue;
            }
            loop {
                let norm = n.iter().map(|x| x.abs()).max().unwrap();
                bins[bin(norm, m)].add(self.term(&n));
                count += 1;
                let mut k = r - 1;
                loop {
                    if n[k] < m {
                        n[k] += 1;
                        break;
                    }
                    n[k] = -m;
                    k -= 1;
                    if k == 0 {
                        break;
                    }
                }
                if k == 0 {
                    break;
                }
            }
        }
        (bins, count)
    }
}

fn bin(norm: i64, m: i64) -> usize {
    if norm <= m / 4 {
        0
    } else if norm <= m / 2 {
        1
    } else {
        2
    }
}

/// Truncated lattice sum of `B(Φ, Λ)(v)`; `v` in ambient coordinates.
pub fn direct_sum(
    sys: RootSystem,
    lattice: LatticeKind,
    s: &ExponentMap,
    v: &[Rational],
    cfg: &OracleConfig,
) -> Result<OracleValue> {
    if cfg.radius < 10 {
        return Err(Error::InvalidArgument("oracle radius must be at least 10".into()));
    }
    let sm = prepare(sys, lattice, s, v)?;
    let m = cfg.radius as i64;
    let chunks = cfg.chunks.max(1) as i64;
    let width = (m + chunks) / chunks;
    let slabs: Vec<(i64, i64)> =
        (0..chunks).map(|c| (c * width, ((c + 1) * width).min(m + 1))).filter(|(a, b)| a < b).collect();
    let parts: Vec<([Acc; 3], u64)> = slabs.par_iter().map(|&(a, b)| sm.slab(a, b, m)).collect();
    // points with leading zeros, lower-rank half spaces
    let mut lower = [Acc::default(); 3];
    let mut lower_count = 0u64;
    if sm.rank > 1 {
        for lead in 1..sm.rank {
            let (b, c) = sm.sub_half_space(lead, m);
            for i in 0..3 {
                lower[i].merge(&b[i]);
            }
            lower_count += c;
        }
    }
    let mut bins = [Acc::default(); 3];
    let mut points = lower_count;
    for (b, c) in &parts {
        for i in 0..3 {
            bins[i].merge(&b[i]);
        }
        points += c;
    }
    for i in 0..3 {
        bins[i].merge(&lower[i]);
    }
    let scale = 2.0 * (2.0 * std::f64::consts::PI).powi(-(sm.total as i32));
    let q = bins[0].value() * scale;
    let h = q + bins[1].value() * scale;
    let full = h + bins[2].value() * scale;
    let value = if cfg.extrapolate { (8.0 * full - 6.0 * h + q) / 3.0 } else { full };
    Ok(OracleValue {
        value,
        raw: full,
        half_radius: h,
        quarter_radius: q,
        tail_estimate: (value - h).abs(),
        points: points * 2,
    })
}

impl Summand {
    /// Points whose first `lead` coordinates vanish and whose next one is positive.
    fn sub_half_space(&self, lead: usize, m: i64) -> ([Acc; 3], u64) {
        let r = self.rank;
        let mut bins = [Acc::default(); 3];
        let mut count = 0u64;
        let mut n = vec![0i64; r];
        for first in 1..=m {
            n[lead] = first;
            for x in n.iter_mut().skip(lead + 1) {
                *x = -m;
            }
            loop {
                let norm = n.iter().map(|x| x.abs()).max().unwrap();
                bins[bin(norm, m)].add(self.term(&n));
                count += 1;
                if lead + 1 == r {
                    break;
                }
                let mut k = r - 1;
                let mut done = false;
                loop {
                    if n[k] < m {
                        n[k] += 1;
                        break;
                    }
                    n[k] = -m;
                    if k == lead + 1 {
                        done = true;
                        break;
                    }
                    k -= 1;
                }
                if done {
                    break;
                }
            }
        }
        (bins, count)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub pass: bool,
    pub engine: f64,
    pub oracle: f64,
    pub rel_error: f64,
    pub message: String,
}

/// Absolute size below which an engine value counts as zero.
pub const ABS_FLOOR: f64 = 1e-300;

pub fn compare(engine: &Rational, oracle: f64, rel_tol: f64) -> Comparison {
    let e = to_f64(engine);
    if engine.is_zero() || e.abs() < ABS_FLOOR {
        let pass = oracle.abs() < ABS_FLOOR;
        let message = if pass {
            "engine and oracle both vanish".to_string()
        } else {
            format!("engine value {e:e} is below the absolute floor {ABS_FLOOR:e} but the oracle gives {oracle:e}")
        };
        return Comparison { pass, engine: e, oracle, rel_error: f64::INFINITY, message };
    }
    let rel = ((oracle - e) / e).abs();
    let pass = rel <= rel_tol;
    let message = format!(
        "relative error {rel:.3e} {} tolerance {rel_tol:.1e}",
        if pass { "within" } else { "exceeds" }
    );
    Comparison { pass, engine: e, oracle, rel_error: rel, message }
}

/// Sign of an engine value, used to spot sign slips quickly.
pub fn same_sign(engine: &Rational, oracle: f64) -> bool {
    engine.is_positive() == (oracle > 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::rootsys::Family;

    #[test]
    fn rank_one_zeta_two() {
        let a1 = RootSystem::new(Family::A, 1).unwrap();
        let s = ExponentMap::uniform(a1, 2);
        let cfg = OracleConfig { radius: 10_000, ..Default::default() };
        let o = direct_sum(a1, LatticeKind::CorootA, &s, &[rat(0, 1), rat(0, 1)], &cfg).unwrap();
        assert!((o.value + 1.0 / 12.0).abs() < 1e-10, "{o:?}");
        assert!((o.raw + 1.0 / 12.0).abs() / (1.0 / 12.0) < 1e-4);
    }

    #[test]
    fn rank_one_polynomial() {
        // -B(3, 1/3)/3! = -1/162
        let a1 = RootSystem::new(Family::A, 1).unwrap();
        let s = ExponentMap::uniform(a1, 3);
        let cfg = OracleConfig { radius: 2000, ..Default::default() };
        let o = direct_sum(a1, LatticeKind::CorootA, &s, &[rat(1, 3), rat(-1, 3)], &cfg).unwrap();
        assert!((o.value + 1.0 / 162.0).abs() < 1e-9, "{o:?}");
    }

    #[test]
    fn guard_rejects_simple_poles() {
        let a2 = RootSystem::new(Family::A, 2).unwrap();
        let s = ExponentMap::uniform(a2, 1);
        let r = direct_sum(a2, LatticeKind::CorootA, &s, &vec![rat(0, 1); 3], &OracleConfig::default());
        assert!(matches!(r, Err(Error::OracleNotApplicable(_))));
    }

    #[test]
    fn compare_reports() {
        assert!(compare(&rat(-1, 12), -0.08333, 1e-3).pass);
        let c = compare(&rat(0, 1), 0.5, 1e-3);
        assert!(!c.pass);
        assert!(c.message.contains("absolute floor"));
    }
}
