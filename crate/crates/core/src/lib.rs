//! Exact evaluation of multiple Bernoulli series attached to classical root systems.
//!
//! The engine expands a lattice sum over the regular part of a dual lattice into
//! iterated constant-term residues over a diagonal set of bases, which yields
//! exact rational values, step polynomials and tope polynomials. On top of it sit
//! Witten volumes of moduli spaces of flat connections, even-weight Witten zeta
//! values and a floating point lattice-sum oracle used for cross-checking.

pub mod error;
pub mod exact;
pub mod oracle;
pub mod residue;
pub mod rootsys;
pub mod series;
pub mod witten;

pub use error::{Error, Result};
pub use exact::{Poly, Rational};
pub use rootsys::{ExponentMap, Family, LatticeKind, RootLabel, RootSystem};
pub use series::{bernoulli_eval, BernoulliOutput, BernoulliQuery, BernoulliSeries, QueryMode, StepPolynomial};
