use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::exact::modular::{ModBlock, Reconstructor, MAX_BLOCKS};
use crate::exact::{exp_todd_coeffs, frac, Coeff, Poly, Rational};
use crate::residue::{integrand_frame, Kernel, Key};
use crate::rootsys::{flag_bases, Arrangement, OrderedBasis};

use num_traits::{Signed, Zero};

struct PreparedBasis {
    basis: OrderedBasis,
    kernel: Kernel,
    terms: FxHashMap<Key, Rational>,
}

/// The diagonal-set sum for an arrangement of type A (lattice `Q̌_A`) or BC
/// (lattice `Z^r`) with fixed exponents, ready to be evaluated at many points.
pub struct Core {
    pub arrangement: Arrangement,
    pub exponents: Vec<u32>,
    cap: usize,
    bases: Vec<PreparedBasis>,
}

/// How `u_i = {c_i^σ(p)}` is chosen when `c_i^σ(p)` is an integer.
pub enum Side<'a> {
    /// The point must be regular.
    Strict,
    /// Limit along `p + εδ`, `ε → 0+`.
    Direction(&'a [Rational]),
}

impl Core {
    pub fn new(arrangement: Arrangement, exponents: Vec<u32>) -> Result<Self> {
        let eqs = arrangement.equations();
        if eqs.len() != exponents.len() {
            return Err(Error::DimensionMismatch { expected: eqs.len(), got: exponents.len() });
        }
        let g: Vec<(Vec<Rational>, u32)> =
            eqs.into_iter().zip(exponents.iter().copied()).filter(|(_, s)| *s > 0).collect();
        let cap: usize = exponents.iter().map(|&s| s as usize).sum();
        let bases = flag_bases(arrangement.system())?
            .into_par_iter()
            .map(|basis| {
                let expr = integrand_frame::<Rational>(&basis, &g);
                let mut kernel = Kernel::new(arrangement.rank());
                let terms = kernel.initial_terms(&expr)?;
                Ok(PreparedBasis { basis, kernel, terms })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Core { arrangement, exponents, cap, bases })
    }

    pub fn rank(&self) -> usize {
        self.arrangement.rank()
    }

    pub fn bases(&self) -> impl Iterator<Item = &OrderedBasis> {
        self.bases.iter().map(|b| &b.basis)
    }

    /// `u_i^σ(p)` following the side rule.
    pub fn u_values(&self, basis: &OrderedBasis, p: &[Rational], side: &Side<'_>) -> Result<Vec<Rational>> {
        let c = basis.coeffs(p);
        let dc = match side {
            Side::Direction(d) => Some(basis.coeffs(d)),
            Side::Strict => None,
        };
        c.iter()
            .enumerate()
            .map(|(i, ci)| {
                if !ci.is_integer() {
                    return Ok(frac(ci));
                }
                match &dc {
                    None => Err(Error::NonRegularPoint {
                        wall: format!("coefficient of {} is an integer", basis.names[i]),
                    }),
                    Some(d) if d[i].is_zero() => Err(Error::GenericityFailure(format!(
                        "direction has zero coefficient on {} in basis {:?}",
                        basis.names[i], basis.names
                    ))),
                    Some(d) => Ok(if d[i].is_positive() { Rational::zero() } else { Rational::from_integer(1.into()) }),
                }
            })
            .collect()
    }

    /// Numeric value at `p` (working coordinates).
    ///
    /// Runs the elimination modulo blocks of word-size primes until the
    /// reconstructed rational is confirmed by primes held back from it.
    pub fn eval(&self, p: &[Rational], side: &Side<'_>) -> Result<Rational> {
        let (us, table) = self.prepare(p, side)?;
        let mut rc = Reconstructor::new();
        for block in 0..MAX_BLOCKS {
            macro_rules! run {
                ($($b:literal)*) => {
                    match block {
                        $($b => rc.push(&self.eval_block::<$b>(&us, &table)?),)*
                        _ => unreachable!(),
                    }
                };
            }
            run!(0 1 2 3 4 5 6 7 8 9 10 11);
            if rc.blocks() >= 1 {
                if let Some(v) = rc.value() {
                    return Ok(v);
                }
            }
        }
        Err(Error::Internal("modular reconstruction ran out of primes".into()))
    }

    /// Same value as [`Core::eval`] computed with rational arithmetic throughout.
    pub fn eval_exact(&self, p: &[Rational], side: &Side<'_>) -> Result<Rational> {
        let (us, table) = self.prepare(p, side)?;
        self.eval_coeff(&us, &table, &|r: &Rational| Ok(r.clone()))
    }

    #[allow(clippy::type_complexity)]
    fn prepare(
        &self,
        p: &[Rational],
        side: &Side<'_>,
    ) -> Result<(Vec<Vec<Rational>>, FxHashMap<Rational, Vec<Rational>>)> {
        let us: Vec<Vec<Rational>> =
            self.bases.iter().map(|b| self.u_values(&b.basis, p, side)).collect::<Result<_>>()?;
        let mut table = FxHashMap::default();
        for u in us.iter().flatten() {
            if !table.contains_key(u) {
                table.insert(u.clone(), exp_todd_coeffs(u, self.cap + 1));
            }
        }
        Ok((us, table))
    }

    fn eval_block<const B: usize>(
        &self,
        us: &[Vec<Rational>],
        table: &FxHashMap<Rational, Vec<Rational>>,
    ) -> Result<ModBlock<B>> {
        self.eval_coeff(us, table, &|r: &Rational| {
            ModBlock::<B>::try_from_rational(r)
                .ok_or_else(|| Error::Internal(format!("prime block {B} divides a denominator")))
        })
    }

    fn eval_coeff<C: Coeff>(
        &self,
        us: &[Vec<Rational>],
        table: &FxHashMap<Rational, Vec<Rational>>,
        conv: &(dyn Fn(&Rational) -> Result<C> + Sync),
    ) -> Result<C> {
        let mut ftab: FxHashMap<&Rational, Vec<C>> = FxHashMap::default();
        for (u, f) in table {
            ftab.insert(u, f.iter().map(conv).collect::<Result<_>>()?);
        }
        let parts: Vec<C> = self
            .bases
            .par_iter()
            .zip(us.par_iter())
            .map(|(b, u)| {
                let f: Vec<Vec<C>> = u.iter().map(|ui| ftab[ui].clone()).collect();
                let terms = b.terms.iter().map(|(k, c)| Ok((k.clone(), conv(c)?))).collect::<Result<_>>()?;
                b.kernel.eliminate(terms, &f)
            })
            .collect::<Result<_>>()?;
        let mut total = C::nil();
        for x in &parts {
            total.add_assign_ref(x);
        }
        Ok(total)
    }

    /// Symbolic sum where `symbols[σ][i]` is the polynomial variable standing for `u_i^σ`.
    pub fn eval_symbolic(&self, symbols: &[Vec<u32>]) -> Result<Poly> {
        let parts: Vec<Poly> = self
            .bases
            .par_iter()
            .zip(symbols.par_iter())
            .map(|(b, sy)| {
                let f: Vec<Vec<Poly>> =
                    sy.iter().map(|&s| exp_todd_coeffs(&Poly::var(s), self.cap + 1)).collect();
                let terms: FxHashMap<Key, Poly> =
                    b.terms.iter().map(|(k, c)| (k.clone(), Poly::from_rational(c))).collect();
                b.kernel.eliminate(terms, &f)
            })
            .collect::<Result<_>>()?;
        Ok(parts.into_iter().fold(Poly::zero(), |a, b| a.add(&b)))
    }
}
