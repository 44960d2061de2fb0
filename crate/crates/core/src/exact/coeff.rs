use std::fmt::Debug;

use num_traits::{One, Zero};

use super::{Poly, Rational};

/// Coefficient ring used by series and residue computations.
pub trait Coeff: Clone + Debug + PartialEq + Send + Sync {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    fn from_rational(r: &Rational) -> Self;
    fn add_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }
    fn pow(&self, k: u32) -> Self {
        let mut acc = Self::unit();
        for _ in 0..k {
            acc = acc.mul_ref(self);
        }
        acc
    }
}

impl Coeff for Rational {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
}

impl Coeff for Poly {
    fn nil() -> Self {
        Poly::zero()
    }
    fn unit() -> Self {
        Poly::constant(Rational::one())
    }
    fn is_nil(&self) -> bool {
        Poly::is_zero(self)
    }
    fn from_rational(r: &Rational) -> Self {
        Poly::constant(r.clone())
    }
    fn add_assign_ref(&mut self, other: &Self) {
        self.add_assign_poly(other);
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn scale(&self, r: &Rational) -> Self {
        Poly::scale(self, r)
    }
}
