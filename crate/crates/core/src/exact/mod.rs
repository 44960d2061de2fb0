//! Exact arithmetic: rationals, multivariate polynomials, truncated power series,
//! Bernoulli numbers and small dense linear algebra over Q.

mod bernoulli;
mod coeff;
pub mod linalg;
pub mod modular;
mod poly;
mod rational;
mod series;

pub use bernoulli::{
    bernoulli_number, bernoulli_poly, bernoulli_poly_coeffs, bernoulli_poly_eval, exp_linear,
    exp_todd_coeffs, factorial, todd_factor,
};
pub use coeff::Coeff;
pub use poly::{Monomial, Poly};
pub use rational::{
    fmt_rational, frac, parse_rational, parse_rational_list, rat, rat_floor, to_f64, Rational,
};
pub use series::TruncSeries;
