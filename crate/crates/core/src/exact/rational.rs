use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_floor(t: &Rational) -> Rational {
    t.floor()
}

/// Fractional part in [0, 1).
pub fn frac(t: &Rational) -> Rational {
    t - t.floor()
}

pub fn to_f64(t: &Rational) -> f64 {
    if t.is_zero() {
        return 0.0;
    }
    if let Some(x) = t.to_f64() {
        if x.is_finite() && x != 0.0 {
            return x;
        }
    }
    // fall back on a scaled quotient when numerator or denominator overflow f64
    let n = t.numer().abs();
    let d = t.denom().clone();
    let shift = n.bits() as i64 - d.bits() as i64 - 64;
    let q = if shift >= 0 {
        n / (d << (shift as u64))
    } else {
        (n << ((-shift) as u64)) / d
    };
    let m = q.to_f64().unwrap_or(f64::NAN);
    let half = (shift / 2) as i32;
    let v = m * 2f64.powi(half) * 2f64.powi(shift as i32 - half);
    if t.is_negative() {
        -v
    } else {
        v
    }
}

/// Parses `p/q` or `p`. Decimal points are rejected on purpose.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(n, d))
}

pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}

/// Canonical `p/q` rendering, integers without the denominator.
pub fn fmt_rational(t: &Rational) -> String {
    if t.denom().is_one() {
        t.numer().to_string()
    } else {
        format!("{}/{}", t.numer(), t.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frac_of_negative() {
        assert_eq!(frac(&rat(-1, 3)), rat(2, 3));
        assert_eq!(frac(&rat(7, 2)), rat(1, 2));
        assert_eq!(frac(&rat(4, 1)), rat(0, 1));
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["3/7", "-5", "0", "-12/18"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(parse_rational(&fmt_rational(&r)).unwrap(), r);
        }
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn huge_to_f64() {
        let big = Rational::new(BigInt::one() << 2000u32, (BigInt::one() << 2001u32) + 1);
        assert!((to_f64(&big) - 0.5).abs() < 1e-15);
        let tiny = Rational::new(BigInt::from(3), BigInt::one() << 1000u32);
        let expect = 3.0 * 2f64.powi(-1000);
        assert!(((to_f64(&tiny) - expect) / expect).abs() < 1e-12);
    }
}
