//! Iterated residues `Res^σ` of rational functions with linear-form denominators.
//!
//! Expressions live in σ-coordinates `t_i = ⟨α_i, z⟩`. The numerator is the
//! product of a general truncated series and one univariate series per variable,
//! which is how the Bernoulli integrand `e^{Σ u_i t_i} Π T(t_i)` factors.

mod kernel;

use crate::error::Result;
use crate::exact::{exp_todd_coeffs, linalg, Coeff, Rational, TruncSeries};
use crate::rootsys::OrderedBasis;

pub use kernel::{residue_of_terms, Kernel, Key};

/// `numerator / Π form^power` in σ-coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct FractionExpr<C: Coeff> {
    pub nvars: usize,
    /// General numerator factor.
    pub series: TruncSeries<C>,
    /// Per-variable factors `f_i(t_i)`; an empty list stands for the constant 1.
    pub univariate: Vec<Vec<C>>,
    /// Denominator forms (coefficients on `t_1..t_r`) with positive powers.
    pub denominator: Vec<(Vec<Rational>, u32)>,
}

impl<C: Coeff> FractionExpr<C> {
    /// `1 / Π form^power`.
    pub fn from_denominator(nvars: usize, denominator: Vec<(Vec<Rational>, u32)>) -> Self {
        let n: u32 = denominator.iter().map(|(_, p)| p).sum();
        let cap = (n as usize).saturating_sub(nvars);
        FractionExpr {
            nvars,
            series: TruncSeries::constant(nvars, cap, C::unit()),
            univariate: vec![Vec::new(); nvars],
            denominator: merge_forms(denominator),
        }
    }

    /// Total denominator multiplicity `N`.
    pub fn pole_order(&self) -> u32 {
        self.denominator.iter().map(|(_, p)| p).sum()
    }

    /// The full numerator as one truncated series.
    pub fn numerator_series(&self) -> TruncSeries<C> {
        let mut acc = self.series.clone();
        for (i, f) in self.univariate.iter().enumerate() {
            if !f.is_empty() {
                acc = acc.mul(&TruncSeries::univariate(self.nvars, acc.cap(), i, f));
            }
        }
        acc
    }
}

fn merge_forms(list: Vec<(Vec<Rational>, u32)>) -> Vec<(Vec<Rational>, u32)> {
    let mut out: Vec<(Vec<Rational>, u32)> = Vec::new();
    for (f, p) in list {
        if p == 0 {
            continue;
        }
        match out.iter_mut().find(|(g, _)| *g == f) {
            Some(e) => e.1 += p,
            None => out.push((f, p)),
        }
    }
    out
}

/// Rewrites forms given in working coordinates as forms in `t_1..t_r`.
pub fn to_sigma_coords(forms: &[Vec<Rational>], sigma: &OrderedBasis) -> Vec<Vec<Rational>> {
    forms.iter().map(|f| linalg::mat_vec(&sigma.to_sigma, f)).collect()
}

/// Data of one summand of the step-polynomial formula.
#[derive(Clone, Debug)]
pub struct ResidueRequest<'a, C: Coeff> {
    pub sigma: &'a OrderedBasis,
    /// `g = Π 1/⟨φ, z⟩^s`, forms in working coordinates.
    pub g: Vec<(Vec<Rational>, u32)>,
    pub u: Vec<C>,
}

/// `(-1)^r e^{Σ u_i t_i} Π T(t_i) / (Π t_i · g-forms)`, using
/// `1/(1 - e^t) = -(1/t) T(t)` with `T(t) = t/(e^t - 1)`.
pub fn build_integrand<C: Coeff>(req: &ResidueRequest<'_, C>) -> FractionExpr<C> {
    let mut expr = integrand_frame(req.sigma, &req.g);
    let cap = expr.series.cap();
    expr.univariate = req.u.iter().map(|u| exp_todd_coeffs(u, cap + 1)).collect();
    expr
}

/// The integrand with the per-variable factors left out (all set to 1).
pub fn integrand_frame<C: Coeff>(sigma: &OrderedBasis, g: &[(Vec<Rational>, u32)]) -> FractionExpr<C> {
    let r = sigma.rank();
    let cap: usize = g.iter().map(|(_, s)| *s as usize).sum();
    let sign = if r % 2 == 1 { -Rational::from_integer(1.into()) } else { Rational::from_integer(1.into()) };
    let series = TruncSeries::constant(r, cap, C::from_rational(&sign));
    let mut denominator: Vec<(Vec<Rational>, u32)> = (0..r)
        .map(|i| {
            let mut e = vec![Rational::from_integer(0.into()); r];
            e[i] = Rational::from_integer(1.into());
            (e, 1)
        })
        .collect();
    let forms: Vec<Vec<Rational>> = g.iter().map(|(f, _)| f.clone()).collect();
    for (f, (_, s)) in to_sigma_coords(&forms, sigma).into_iter().zip(g) {
        denominator.push((f, *s));
    }
    FractionExpr { nvars: r, series, univariate: vec![Vec::new(); r], denominator: merge_forms(denominator) }
}

/// `Res_{t_1} … Res_{t_r}` of the expression, innermost variable first.
pub fn iterated_residue<C: Coeff>(expr: &FractionExpr<C>) -> Result<C> {
    let mut k = Kernel::new(expr.nvars);
    let terms = k.initial_terms(expr)?;
    k.eliminate(terms, &expr.univariate)
}
