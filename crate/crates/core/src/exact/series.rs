use std::collections::BTreeMap;

use super::{Coeff, Rational};

/// Multivariate power series truncated at total degree `cap` (degrees `0..=cap` kept).
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<C: Coeff> {
    nvars: usize,
    cap: usize,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Coeff> TruncSeries<C> {
    pub fn zero(nvars: usize, cap: usize) -> Self {
        TruncSeries { nvars, cap, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, cap: usize, c: C) -> Self {
        let mut s = Self::zero(nvars, cap);
        s.add_term(vec![0; nvars], c);
        s
    }

    /// The series of a single variable `t_i`.
    pub fn var(nvars: usize, cap: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut s = Self::zero(nvars, cap);
        s.add_term(e, C::unit());
        s
    }

    /// Univariate series in variable `i` from a coefficient list.
    pub fn univariate(nvars: usize, cap: usize, i: usize, coeffs: &[C]) -> Self {
        let mut s = Self::zero(nvars, cap);
        for (n, c) in coeffs.iter().enumerate().take(cap + 1) {
            let mut e = vec![0; nvars];
            e[i] = n as u32;
            s.add_term(e, c.clone());
        }
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::nil)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: C) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_nil() || exps.iter().sum::<u32>() as usize > self.cap {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                v.add_assign_ref(&c);
                if v.is_nil() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars, self.cap.min(other.cap));
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = Self::zero(self.nvars, self.cap);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.scale(r));
        }
        out
    }

    /// Product truncated at the smaller of the two caps.
    pub fn mul(&self, other: &Self) -> Self {
        let cap = self.cap.min(other.cap);
        let mut out = Self::zero(self.nvars, cap);
        for (e1, c1) in &self.terms {
            let d1: u32 = e1.iter().sum();
            for (e2, c2) in &other.terms {
                let d2: u32 = e2.iter().sum();
                if (d1 + d2) as usize > cap {
                    continue;
                }
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.mul_ref(c2));
            }
        }
        out
    }
}
