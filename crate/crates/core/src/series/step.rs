use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{fmt_rational, frac, linalg::dot, parse_rational, Monomial, Poly, Rational};

/// `{scale · ⟨form, v⟩ + shift}`, with `v` in ambient coordinates and `shift ∈ [0,1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StepFactor {
    pub form: Vec<Rational>,
    pub scale: Rational,
    pub shift: Rational,
}

impl StepFactor {
    pub fn argument(&self, v: &[Rational]) -> Rational {
        &self.scale * dot(&self.form, v) + &self.shift
    }

    pub fn eval(&self, v: &[Rational]) -> Rational {
        frac(&self.argument(v))
    }
}

/// A polynomial in fractional parts of affine forms.
#[derive(Clone, Debug, PartialEq)]
pub struct StepPolynomial {
    /// Ambient dimension of `v`.
    pub dim: usize,
    pub factors: Vec<StepFactor>,
    /// Polynomial whose variable `j` stands for `factors[j]`.
    pub poly: Poly,
}

impl StepPolynomial {
    pub fn num_terms(&self) -> usize {
        self.poly.num_terms()
    }

    pub fn eval(&self, v: &[Rational]) -> Result<Rational> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: v.len() });
        }
        let u: Vec<Rational> = self.factors.iter().map(|f| f.eval(v)).collect();
        Ok(self.poly.eval(&u))
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .poly
            .terms()
            .map(|(m, c)| {
                let factors: Vec<Value> = m
                    .0
                    .iter()
                    .map(|&(j, e)| {
                        let f = &self.factors[j as usize];
                        json!({
                            "form": f.form.iter().map(fmt_rational).collect::<Vec<_>>(),
                            "shift": fmt_rational(&f.shift),
                            "scale": fmt_rational(&f.scale),
                            "exp": e,
                        })
                    })
                    .collect();
                json!({ "coeff": fmt_rational(c), "factors": factors })
            })
            .collect();
        json!({ "dim": self.dim, "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("step polynomial json: {m}"));
        let dim = v["dim"].as_u64().ok_or_else(|| bad("missing dim"))? as usize;
        let terms = v["terms"].as_array().ok_or_else(|| bad("missing terms"))?;
        let mut factors: Vec<StepFactor> = Vec::new();
        let mut poly = Poly::zero();
        let text = |x: &Value| -> Result<Rational> { parse_rational(x.as_str().ok_or_else(|| bad("expected string"))?) };
        for t in terms {
            let coeff = text(&t["coeff"])?;
            let mut mono = Monomial::one();
            for f in t["factors"].as_array().ok_or_else(|| bad("missing factors"))? {
                let form = f["form"]
                    .as_array()
                    .ok_or_else(|| bad("missing form"))?
                    .iter()
                    .map(text)
                    .collect::<Result<Vec<_>>>()?;
                let sf = StepFactor { form, scale: text(&f["scale"])?, shift: text(&f["shift"])? };
                let exp = f["exp"].as_u64().ok_or_else(|| bad("missing exp"))? as u32;
                let j = match factors.iter().position(|g| *g == sf) {
                    Some(j) => j,
                    None => {
                        factors.push(sf);
                        factors.len() - 1
                    }
                };
                mono = mono.mul(&Monomial::var(j as u32, exp));
            }
            poly.add_term(mono, coeff);
        }
        Ok(StepPolynomial { dim, factors, poly })
    }

    /// Human-readable form with `{…}` for fractional parts.
    pub fn display(&self) -> String {
        self.poly.display_with(&|j| {
            let f = &self.factors[j as usize];
            let lin: Vec<String> = f
                .form
                .iter()
                .enumerate()
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(i, c)| format!("{}*v{}", fmt_rational(c), i + 1))
                .collect();
            format!("{{{}*({})+{}}}", fmt_rational(&f.scale), lin.join("+"), fmt_rational(&f.shift))
        })
    }
}
