//! Multi-modular arithmetic: residues modulo blocks of 62-bit primes, Chinese
//! remaindering and rational reconstruction.

use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Coeff, Rational};

/// Primes per block.
pub const LANES: usize = 8;
/// Number of prime blocks available.
pub const MAX_BLOCKS: usize = 12;

/// One prime with its Montgomery constants (`R = 2^64`).
#[derive(Clone, Copy, Debug)]
pub struct Prime {
    pub p: u64,
    ninv: u64,
    r2: u64,
}

fn mulmod_slow(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod_slow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_slow(acc, a, p);
        }
        a = mulmod_slow(a, a, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(p as i128) as u64
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_slow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_slow(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Prime {
    fn new(p: u64) -> Self {
        let mut inv = 1u64;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        Prime { p, ninv: inv.wrapping_neg(), r2: mulmod_slow(r, r, p) }
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.ninv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn to_mont(&self, a: u64) -> u64 {
        self.mul(a % self.p, self.r2)
    }

    pub fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    fn reduce_big(&self, n: &BigInt) -> u64 {
        let mut acc: u64 = 0;
        for d in n.magnitude().to_u64_digits().iter().rev() {
            acc = (((acc as u128) << 64 | *d as u128) % self.p as u128) as u64;
        }
        if n.sign() == Sign::Minus && acc != 0 {
            self.p - acc
        } else {
            acc
        }
    }

    /// `r mod p` in Montgomery form, `None` when `p` divides the denominator.
    pub fn rational(&self, r: &Rational) -> Option<u64> {
        let d = self.reduce_big(r.denom());
        if d == 0 {
            return None;
        }
        let n = self.reduce_big(r.numer());
        let v = mulmod_slow(n, invmod(d, self.p), self.p);
        Some(self.to_mont(v))
    }
}

/// All primes, largest first, below `2^62`.
pub fn primes() -> &'static [Prime] {
    static P: OnceLock<Vec<Prime>> = OnceLock::new();
    P.get_or_init(|| {
        let mut out = Vec::with_capacity(LANES * MAX_BLOCKS);
        let mut n = (1u64 << 62) - 1;
        while out.len() < LANES * MAX_BLOCKS {
            if is_prime(n) {
                out.push(Prime::new(n));
            }
            n -= 2;
        }
        out
    })
}

/// Residues of one value modulo the primes of block `B`, in Montgomery form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModBlock<const B: usize>(pub [u64; LANES]);

impl<const B: usize> ModBlock<B> {
    #[inline]
    fn lanes() -> &'static [Prime] {
        &primes()[B * LANES..(B + 1) * LANES]
    }

    /// Plain residues (not Montgomery form).
    pub fn residues(&self) -> [u64; LANES] {
        let ps = Self::lanes();
        let mut out = [0u64; LANES];
        for i in 0..LANES {
            out[i] = ps[i].from_mont(self.0[i]);
        }
        out
    }

    /// Fails when a prime of the block divides the denominator of `r`.
    pub fn try_from_rational(r: &Rational) -> Option<Self> {
        let ps = Self::lanes();
        let mut out = [0u64; LANES];
        for i in 0..LANES {
            out[i] = ps[i].rational(r)?;
        }
        Some(ModBlock(out))
    }
}

impl<const B: usize> Coeff for ModBlock<B> {
    fn nil() -> Self {
        ModBlock([0; LANES])
    }
    fn unit() -> Self {
        let ps = Self::lanes();
        let mut out = [0u64; LANES];
        for i in 0..LANES {
            out[i] = ps[i].to_mont(1);
        }
        ModBlock(out)
    }
    fn is_nil(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
    fn from_rational(r: &Rational) -> Self {
        Self::try_from_rational(r).expect("denominator divisible by a 62-bit prime")
    }
    #[inline]
    fn add_assign_ref(&mut self, other: &Self) {
        let ps = Self::lanes();
        for i in 0..LANES {
            self.0[i] = ps[i].add(self.0[i], other.0[i]);
        }
    }
    #[inline]
    fn mul_ref(&self, other: &Self) -> Self {
        let ps = Self::lanes();
        let mut out = [0u64; LANES];
        for i in 0..LANES {
            out[i] = ps[i].mul(self.0[i], other.0[i]);
        }
        ModBlock(out)
    }
    fn scale(&self, r: &Rational) -> Self {
        self.mul_ref(&Self::from_rational(r))
    }
}

/// Chinese remaindering into `[0, M)`.
pub fn crt(residues: &[u64], moduli: &[u64]) -> (BigInt, BigInt) {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (&a, &p) in residues.iter().zip(moduli) {
        let pb = BigInt::from(p);
        let xm = (&x % &pb).to_u64().unwrap_or(0);
        let mm = (&m % &pb).to_u64().unwrap_or(0);
        let diff = (a + p - xm) % p;
        let t = mulmod_slow(diff, invmod(mm, p), p);
        x += &m * BigInt::from(t);
        m *= pb;
    }
    (x, m)
}

/// Smallest rational `n/d` with `n ≡ a d (mod m)` and `|n|, d < sqrt(m/2)`.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

/// Accumulated residues of one unknown rational over several blocks.
#[derive(Clone, Debug, Default)]
pub struct Reconstructor {
    residues: Vec<u64>,
    moduli: Vec<u64>,
}

/// Primes kept aside to confirm a reconstruction.
const CHECK_PRIMES: usize = 2;

impl Reconstructor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push<const B: usize>(&mut self, v: &ModBlock<B>) {
        self.residues.extend_from_slice(&v.residues());
        self.moduli.extend(ModBlock::<B>::lanes().iter().map(|p| p.p));
    }

    pub fn blocks(&self) -> usize {
        self.moduli.len() / LANES
    }

    /// Reconstructs from all but the last primes and confirms with those.
    pub fn value(&self) -> Option<Rational> {
        let n = self.moduli.len().checked_sub(CHECK_PRIMES)?;
        let (x, m) = crt(&self.residues[..n], &self.moduli[..n]);
        let q = rational_reconstruct(&x, &m)?;
        let ps = primes();
        for i in n..self.moduli.len() {
            let prime = ps.iter().find(|pr| pr.p == self.moduli[i])?;
            let got = prime.from_mont(prime.rational(&q)?);
            if got != self.residues[i] {
                return None;
            }
        }
        Some(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn primes_are_distinct_and_large() {
        let ps = primes();
        assert_eq!(ps.len(), LANES * MAX_BLOCKS);
        assert!(ps.windows(2).all(|w| w[0].p > w[1].p));
        assert!(ps.iter().all(|p| p.p > 1 << 61));
    }

    #[test]
    fn montgomery_roundtrip() {
        let p = primes()[3];
        for a in [0u64, 1, 2, 12345, p.p - 1] {
            assert_eq!(p.from_mont(p.to_mont(a)), a);
        }
        let x = p.to_mont(1 << 40);
        let y = p.to_mont(1 << 40);
        assert_eq!(p.from_mont(p.mul(x, y)), mulmod_slow(1 << 40, 1 << 40, p.p));
    }

    #[test]
    fn arithmetic_matches_rationals() {
        let a = rat(-7, 12);
        let b = rat(5, 9);
        let ma = ModBlock::<0>::from_rational(&a);
        let mb = ModBlock::<0>::from_rational(&b);
        let mut s = ma.mul_ref(&mb);
        s.add_assign_ref(&mb);
        let expect = &a * &b + &b;
        let mut rc = Reconstructor::new();
        rc.push(&s);
        assert_eq!(rc.value(), Some(expect));
    }

    #[test]
    fn reconstruction_needs_enough_primes() {
        let big = Rational::new(BigInt::from(3).pow(200u32), BigInt::from(7).pow(190u32));
        let mut rc = Reconstructor::new();
        rc.push(&ModBlock::<0>::from_rational(&big));
        assert_eq!(rc.value(), None);
        rc.push(&ModBlock::<1>::from_rational(&big));
        rc.push(&ModBlock::<2>::from_rational(&big));
        rc.push(&ModBlock::<3>::from_rational(&big));
        assert_eq!(rc.value(), Some(big));
    }

    #[test]
    fn negative_values() {
        let mut rc = Reconstructor::new();
        rc.push(&ModBlock::<2>::from_rational(&rat(-1, 3)));
        assert_eq!(rc.value(), Some(rat(-1, 3)));
    }
}
