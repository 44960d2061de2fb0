//! Witten volumes of moduli spaces of flat connections on marked surfaces,
//! even-weight Witten zeta values, multiple zeta values and SU(2) Verlinde
//! numbers, all expressed through multiple Bernoulli series.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{bernoulli_poly_eval, exp_linear, factorial, fmt_rational, rat, todd_factor, Rational, TruncSeries};
use crate::rootsys::{weyl_elements, ExponentMap, Family, LatticeKind, RootLabel, RootSystem};
use crate::series::BernoulliSeries;

/// `coeff · π^pi_power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiValue {
    pub coeff: Rational,
    pub pi_power: u32,
}

impl std::fmt::Display for PiValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} * pi^{}", fmt_rational(&self.coeff), self.pi_power)
    }
}

/// Constants `(q, f, p, |Z|)` of the simply connected group of each type.
fn group_constants(sys: RootSystem) -> (BigInt, BigInt, u32, BigInt) {
    let r = sys.rank() as u32;
    match sys.family() {
        Family::A => (1.into(), (r + 1).into(), 0, (r + 1).into()),
        Family::B => (2.into(), 2.into(), r, 2.into()),
        Family::C => (BigInt::one() << (r - 1), 2.into(), r * (r - 1), 2.into()),
        Family::D => (1.into(), 4.into(), 0, 4.into()),
    }
}

fn ipow(base: &Rational, e: i64) -> Rational {
    let b = if e < 0 { base.recip() } else { base.clone() };
    (0..e.unsigned_abs()).fold(Rational::one(), |acc, _| acc * &b)
}

fn check_genus(g: u32, s: usize) -> Result<u32> {
    let m = 2 * g as i64 - 2 + s as i64;
    if m < 1 {
        return Err(Error::InvalidArgument(format!("need 2g-2+s >= 1, got g={g}, s={s}")));
    }
    Ok(m as u32)
}

/// `c_vol = 2^{p(2g-2+s)} (fq)^{g-1} |Z| (-1)^{(g-1)|Φ+|} / |W|`.
pub fn c_vol(sys: RootSystem, g: u32, s: usize) -> Result<Rational> {
    let m = check_genus(g, s)?;
    let (q, f, p, z) = group_constants(sys);
    let fq = Rational::from_integer(f * q);
    let mut c = Rational::from_integer(BigInt::one() << (p * m) as usize);
    c *= ipow(&fq, g as i64 - 1);
    c *= Rational::from_integer(z);
    if (g as i64 - 1).rem_euclid(2) == 1 && sys.num_positive_roots() % 2 == 1 {
        c = -c;
    }
    Ok(c / Rational::from_integer(sys.weyl_order().into()))
}

/// Checks that `a` (ambient coordinates) lies strictly inside the fundamental alcove.
pub fn check_alcove(sys: RootSystem, a: &[Rational]) -> Result<()> {
    if a.len() != sys.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: sys.ambient_dim(), got: a.len() });
    }
    if sys.family() == Family::A && !a.iter().sum::<Rational>().is_zero() {
        return Err(Error::InvalidArgument("type A markings must sum to zero".into()));
    }
    for l in sys.simple_roots() {
        if !sys.root_pairing(l, a).is_positive() {
            return Err(Error::InvalidArgument(format!(
                "marking is not inside the alcove: {}(a) <= 0",
                sys.label_string(l)
            )));
        }
    }
    let th = sys.highest_root();
    if sys.root_pairing(th, a) >= Rational::one() {
        return Err(Error::InvalidArgument(format!(
            "marking is not inside the alcove: {}(a) >= 1",
            sys.label_string(th)
        )));
    }
    Ok(())
}

fn uniform_series(sys: RootSystem, m: u32) -> Result<BernoulliSeries> {
    BernoulliSeries::new(sys, LatticeKind::coroot(sys.family()), &ExponentMap::uniform(sys, m))
}

/// `Σ_{w ∈ W^s} Π ε(w_j) B(Φ_{2g-2+s}, Q̌)(Σ w_j a_j)`, or `B(Φ_{2g-2})(0)` when `s = 0`.
pub fn witten_series(sys: RootSystem, g: u32, markings: &[Vec<Rational>]) -> Result<Rational> {
    let m = check_genus(g, markings.len())?;
    let series = uniform_series(sys, m)?;
    let n = sys.ambient_dim();
    if markings.is_empty() {
        return series.limit(&vec![Rational::zero(); n], None);
    }
    for a in markings {
        check_alcove(sys, a)?;
    }
    // B(w x) = ε(w)^m B(x) lets us fix w_1 = 1 at the cost of a factor |W|
    let weyl = weyl_elements(sys);
    let rest = &markings[1..];
    let mut idx = vec![0usize; rest.len()];
    let mut total = Rational::zero();
    loop {
        let mut point = markings[0].clone();
        let mut sign = 1i8;
        for (a, &k) in rest.iter().zip(&idx) {
            let w = &weyl[k];
            sign *= w.sign;
            for (x, y) in point.iter_mut().zip(w.act(a)) {
                *x += y;
            }
        }
        let b = series.limit(&point, None)?;
        if sign > 0 {
            total += b;
        } else {
            total -= b;
        }
        let mut pos = idx.len();
        loop {
            if pos == 0 {
                return Ok(total * Rational::from_integer(BigInt::from(weyl.len())));
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < weyl.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Volume of the moduli space for genus `g` with markings in the alcove.
pub fn volume(sys: RootSystem, g: u32, markings: &[Vec<Rational>]) -> Result<Rational> {
    Ok(c_vol(sys, g, markings.len())? * witten_series(sys, g, markings)?)
}

/// One marking: `(fq)^{g-1} |Z| 2^{p(2g-1)} (-1)^{(g-1)|Φ+|} B(Φ_{2g-1})(a)`.
pub fn volume_one_marking(sys: RootSystem, g: u32, a: &[Rational]) -> Result<Rational> {
    check_alcove(sys, a)?;
    let (q, f, p, z) = group_constants(sys);
    let m = 2 * g + 1 - 2;
    let mut c = ipow(&Rational::from_integer(f * q), g as i64 - 1) * Rational::from_integer(z);
    c *= Rational::from_integer(BigInt::one() << (p * m) as usize);
    if g % 2 == 0 && sys.num_positive_roots() % 2 == 1 {
        c = -c;
    }
    Ok(c * uniform_series(sys, m)?.limit(a, None)?)
}

fn check_even_symmetric(s: &ExponentMap) -> Result<()> {
    let sys = s.system();
    let mut short: Option<u32> = None;
    let mut long: Option<u32> = None;
    for (l, e) in s.entries() {
        if e % 2 == 1 {
            return Err(Error::InvalidExponents(format!("{} has odd exponent {e}", sys.label_string(l))));
        }
        let is_long = match (sys.family(), l) {
            (Family::B, RootLabel::Axis(_)) => false,
            (Family::B, _) => true,
            (Family::C, RootLabel::Axis(_)) => true,
            _ => false,
        };
        let slot = if is_long { &mut long } else { &mut short };
        match slot {
            Some(x) if *x != e => {
                return Err(Error::InvalidExponents(
                    "exponents must be constant on roots of the same length".into(),
                ))
            }
            _ => *slot = Some(e),
        }
    }
    Ok(())
}

/// `ζ(s) = Σ_{dominant regular γ} Π ⟨H_α, γ⟩^{-s_α}` for even, Weyl-invariant `s`.
pub fn zeta_even(s: &ExponentMap) -> Result<PiValue> {
    check_even_symmetric(s)?;
    let sys = s.system();
    let total = s.total();
    if total == 0 {
        return Err(Error::InvalidExponents("all exponents are zero".into()));
    }
    let series = BernoulliSeries::new(sys, LatticeKind::coroot(sys.family()), s)?;
    let b = series.limit(&vec![Rational::zero(); sys.ambient_dim()], None)?;
    let mut coeff = b * Rational::from_integer(BigInt::one() << total as usize)
        / Rational::from_integer(sys.weyl_order().into());
    if (total / 2) % 2 == 1 {
        coeff = -coeff;
    }
    Ok(PiValue { coeff, pi_power: total })
}

/// `ζ_r(2k, …, 2k) = Σ_{n_1 > … > n_r > 0} Π n_i^{-2k}`.
pub fn mzv(depth: usize, weight: u32) -> Result<PiValue> {
    if depth == 0 || weight == 0 || weight % 2 == 1 {
        return Err(Error::InvalidArgument("mzv needs depth >= 1 and a positive even weight".into()));
    }
    let sys = RootSystem::new_unchecked(Family::C, depth);
    let pairs: Vec<(RootLabel, u32)> = (1..=depth).map(|i| (RootLabel::Axis(i), weight)).collect();
    let s = ExponentMap::from_pairs(sys, &pairs)?;
    let series = BernoulliSeries::new(sys, LatticeKind::CorootC, &s)?;
    let b = series.limit(&vec![Rational::zero(); depth], None)?;
    let k = weight / 2;
    let total = weight * depth as u32;
    let mut coeff = b * Rational::from_integer(BigInt::one() << total as usize)
        / Rational::from_integer((BigInt::one() << depth) * factorial(depth));
    if (k as usize * depth) % 2 == 1 {
        coeff = -coeff;
    }
    Ok(PiValue { coeff, pi_power: total })
}

/// Verlinde number of SU(2) at level `level`, genus `g`, one marking `λ = 2tℓ`.
pub fn verlinde_su2(t: &Rational, level: u64, g: u32) -> Result<Rational> {
    if !(t.is_positive() && *t < rat(1, 2)) {
        return Err(Error::InvalidArgument("t must satisfy 0 < t < 1/2".into()));
    }
    let tl = t * Rational::from_integer(level.into());
    if !tl.is_integer() {
        return Err(Error::InvalidArgument("t * level must be an integer".into()));
    }
    if g == 0 {
        return Err(Error::InvalidArgument("genus must be at least 1".into()));
    }
    let n = (2 * g - 1) as usize;
    // coefficients of e^{x(g-2t)} (x/(e^x-1))^{2g-1}
    let shift = Rational::from_integer(g.into()) - t * rat(2, 1);
    let mut series: TruncSeries<Rational> = exp_linear(&[shift], n);
    let todd = todd_factor(n);
    for _ in 0..n {
        series = series.mul(&todd);
    }
    let l2 = Rational::from_integer((level + 2).into());
    let mut sum = Rational::zero();
    for j in 0..=n {
        let c = series.coeff(&[j as u32]);
        let d = n - j;
        sum += c * ipow(&l2, d as i64) * bernoulli_poly_eval(d, t) / Rational::from_integer(factorial(d));
    }
    let mut v = ipow(&l2, g as i64 - 1) * Rational::from_integer(BigInt::one() << g as usize) * sum;
    if g % 2 == 1 {
        v = -v;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_vol_values() {
        let a2 = RootSystem::new(Family::A, 2).unwrap();
        assert_eq!(c_vol(a2, 2, 0).unwrap(), rat(-3, 2));
        let c3 = RootSystem::new(Family::C, 3).unwrap();
        assert_eq!(c_vol(c3, 2, 0).unwrap(), rat(-4096, 3));
        let b2 = RootSystem::new(Family::B, 2).unwrap();
        assert_eq!(c_vol(b2, 1, 2).unwrap(), rat(4, 1));
        assert!(c_vol(b2, 1, 0).is_err());
    }

    #[test]
    fn verlinde_genus_one() {
        for (t, l) in [(rat(1, 4), 4u64), (rat(1, 3), 9)] {
            let lam = &t * rat(2 * l as i64, 1);
            assert_eq!(verlinde_su2(&t, l, 1).unwrap(), rat(l as i64 + 1, 1) - lam);
        }
    }
}
