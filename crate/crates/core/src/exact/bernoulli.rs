use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Coeff, Rational, TruncSeries};
use crate::error::{Error, Result};

fn binomial(n: usize, k: usize) -> BigInt {
    let mut b = BigInt::one();
    for i in 0..k {
        b = b * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    b
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Prefix table grown on demand and shared between threads.
struct Table(RwLock<Vec<Rational>>);

impl Table {
    const fn new() -> Self {
        Table(RwLock::new(Vec::new()))
    }

    fn with<T>(&self, len: usize, extend: fn(&mut Vec<Rational>, usize), f: impl Fn(&[Rational]) -> T) -> T {
        {
            let t = self.0.read().unwrap();
            if t.len() >= len {
                return f(&t[..len]);
            }
        }
        let mut t = self.0.write().unwrap();
        if t.len() < len {
            let target = len.max(2 * t.len()).max(32);
            extend(&mut t, target);
        }
        f(&t[..len])
    }

    fn prefix(&self, len: usize, extend: fn(&mut Vec<Rational>, usize)) -> Vec<Rational> {
        self.with(len, extend, |t| t.to_vec())
    }
}

// Σ_{j=0}^{m} C(m+1, j) B_j = 0 for m ≥ 1
fn extend_bernoulli(b: &mut Vec<Rational>, len: usize) {
    if b.is_empty() {
        b.push(Rational::one());
    }
    while b.len() < len {
        let m = b.len();
        let mut s = Rational::zero();
        let mut c = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            s += bj * Rational::from_integer(c.clone());
            c = c * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-s / Rational::from_integer(BigInt::from(m + 1)));
    }
}

fn extend_inverse_factorials(t: &mut Vec<Rational>, len: usize) {
    while t.len() < len {
        let k = t.len();
        let next = match t.last() {
            None => Rational::one(),
            Some(prev) => prev / Rational::from_integer(BigInt::from(k)),
        };
        t.push(next);
    }
}

fn extend_todd(t: &mut Vec<Rational>, len: usize) {
    let b = BERNOULLI.prefix(len, extend_bernoulli);
    let f = INV_FACT.prefix(len, extend_inverse_factorials);
    for k in t.len()..len {
        t.push(&b[k] * &f[k]);
    }
}

static BERNOULLI: Table = Table::new();
static INV_FACT: Table = Table::new();
static TODD: Table = Table::new();

/// Bernoulli number with the convention `B_1 = -1/2`.
pub fn bernoulli_number(n: usize) -> Rational {
    BERNOULLI.with(n + 1, extend_bernoulli, |t| t[n].clone())
}

/// Coefficients of `B(k, t)` in ascending powers of `t`.
pub fn bernoulli_poly_coeffs(k: usize) -> Vec<Rational> {
    (0..=k)
        .map(|j| bernoulli_number(k - j) * Rational::from_integer(binomial(k, j)))
        .collect()
}

/// `B(k, t)` for any `k ≥ 0`.
pub fn bernoulli_poly_eval(k: usize, t: &Rational) -> Rational {
    let c = bernoulli_poly_coeffs(k);
    let mut acc = Rational::zero();
    for a in c.iter().rev() {
        acc = acc * t + a;
    }
    acc
}

/// Bernoulli polynomial `B(k, t)` for `k ≥ 1`.
pub fn bernoulli_poly(k: usize, t: &Rational) -> Result<Rational> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "bernoulli_poly needs k >= 1; use bernoulli_number for B_0".into(),
        ));
    }
    Ok(bernoulli_poly_eval(k, t))
}

/// `t/(e^t - 1)` truncated at degree `order`.
pub fn todd_factor(order: usize) -> TruncSeries<Rational> {
    let coeffs: Vec<Rational> = (0..=order)
        .map(|n| bernoulli_number(n) / Rational::from_integer(factorial(n)))
        .collect();
    TruncSeries::univariate(1, order, 0, &coeffs)
}

/// `exp(Σ u_i t_i)` truncated at total degree `cap`.
pub fn exp_linear<C: Coeff>(u: &[C], cap: usize) -> TruncSeries<C> {
    let n = u.len();
    let mut acc = TruncSeries::constant(n, cap, C::unit());
    for (i, ui) in u.iter().enumerate() {
        let mut coeffs = Vec::with_capacity(cap + 1);
        let mut p = C::unit();
        for k in 0..=cap {
            coeffs.push(p.scale(&Rational::new(BigInt::one(), factorial(k))));
            p = p.mul_ref(ui);
        }
        acc = acc.mul(&TruncSeries::univariate(n, cap, i, &coeffs));
    }
    acc
}

/// Coefficients `0..len` of `e^{u t} · t/(e^t - 1)`, i.e. `B(n, u)/n!`.
fn inverse_factorials(len: usize) -> Vec<Rational> {
    INV_FACT.prefix(len, extend_inverse_factorials)
}

fn todd_coeffs(len: usize) -> Vec<Rational> {
    TODD.prefix(len, extend_todd)
}

pub fn exp_todd_coeffs<C: Coeff>(u: &C, len: usize) -> Vec<C> {
    let inv_fact = inverse_factorials(len);
    let todd = todd_coeffs(len);
    let mut powers: Vec<C> = Vec::with_capacity(len);
    let mut p = C::unit();
    for k in 0..len {
        powers.push(p.scale(&inv_fact[k]));
        p = p.mul_ref(u);
    }
    (0..len)
        .map(|n| {
            let mut acc = C::nil();
            for j in 0..=n {
                if todd[j].is_zero() {
                    continue;
                }
                acc.add_assign_ref(&powers[n - j].scale(&todd[j]));
            }
            acc
        })
        .collect()
}
