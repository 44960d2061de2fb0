use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::Rational;

/// Sparse monomial: sorted `(variable, exponent)` pairs with nonzero exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: u32, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

/// Multivariate polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(v: u32) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::var(v, 1), Rational::one());
        p
    }

    /// `Σ coeffs[i]·x_i + constant`.
    pub fn affine(coeffs: &[Rational], constant: &Rational) -> Self {
        let mut p = Poly::constant(constant.clone());
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(i as u32, 1), c.clone());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign_poly(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_poly(other);
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Poly {
        if r.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::constant(Rational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Largest variable index present, if any.
    pub fn max_var(&self) -> Option<u32> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|&(v, _)| v)).max()
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in &m.0 {
                let x = point.get(v as usize).cloned().unwrap_or_else(Rational::zero);
                for _ in 0..e {
                    t *= &x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes every variable `v` by `images(v)`.
    pub fn compose(&self, images: &dyn Fn(u32) -> Poly) -> Poly {
        let mut cache: BTreeMap<(u32, u32), Poly> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for &(v, e) in &m.0 {
                let p = cache
                    .entry((v, e))
                    .or_insert_with(|| images(v).pow(e))
                    .clone();
                t = t.mul(&p);
            }
            out.add_assign_poly(&t);
        }
        out
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Renders with the given variable names.
    pub fn display_with(&self, name: &dyn Fn(u32) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter() {
            let mut s = super::fmt_rational(c);
            for &(v, e) in &m.0 {
                if e == 1 {
                    s.push_str(&format!("*{}", name(v)));
                } else {
                    s.push_str(&format!("*{}^{}", name(v), e));
                }
            }
            parts.push(s);
        }
        parts.join(" + ")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&|v| format!("x{}", v + 1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn binomial_square() {
        let p = Poly::var(0).add(&Poly::var(1));
        let q = p.pow(2);
        assert_eq!(q.num_terms(), 3);
        assert_eq!(q.eval(&[rat(1, 2), rat(1, 3)]), rat(25, 36));
        assert_eq!(q.coeff(&Monomial(vec![(0, 1), (1, 1)])), rat(2, 1));
    }

    #[test]
    fn compose_affine() {
        // x0^2 with x0 -> x1 - 1
        let p = Poly::var(0).pow(2);
        let img = Poly::var(1).sub(&Poly::constant(rat(1, 1)));
        let q = p.compose(&|_| img.clone());
        assert_eq!(q.eval(&[rat(0, 1), rat(3, 1)]), rat(4, 1));
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = Poly::var(0).sub(&Poly::var(0));
        assert!(p.is_zero());
    }
}
