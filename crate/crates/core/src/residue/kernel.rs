//! Elimination engine behind [`super::iterated_residue`].
//!
//! A term is `coeff · Π F_j^{-p_j}` where each `F_j` is an interned linear form,
//! normalized to be monic in its highest variable. Eliminating `t_k` takes the
//! coefficient of `t_k^{P-1}` (P the pole order of the pure form `t_k`) in
//! `f_k(t_k) · Π (t_k + c m)^{-q}`, expanding the mixed factors geometrically.

use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use super::FractionExpr;
use crate::error::{Error, Result};
use crate::exact::{Coeff, Rational};

/// Sorted `(form id, power)` pairs; negative powers sit in the numerator.
pub type Key = SmallVec<[(u32, i32); 12]>;

#[derive(Clone, Debug)]
struct FormInfo {
    lead: usize,
    /// `Some((m, c))` when the form is `t_lead + c·m`.
    mixed: Option<(u32, Rational)>,
}

/// Interned linear forms plus the elimination routine.
#[derive(Clone, Debug)]
pub struct Kernel {
    nvars: usize,
    forms: Vec<FormInfo>,
    index: FxHashMap<Vec<Rational>, u32>,
}

fn normalize_key(mut key: Key) -> Key {
    key.sort_unstable_by_key(|&(id, _)| id);
    let mut out: Key = SmallVec::with_capacity(key.len());
    for (id, p) in key {
        match out.last_mut() {
            Some(last) if last.0 == id => last.1 += p,
            _ => out.push((id, p)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

fn rpow(c: &Rational, e: i32) -> Rational {
    let mut acc = Rational::one();
    let base = if e < 0 { c.recip() } else { c.clone() };
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

impl Kernel {
    pub fn new(nvars: usize) -> Self {
        let mut k = Kernel { nvars, forms: Vec::new(), index: FxHashMap::default() };
        for i in 0..nvars {
            let mut e = vec![Rational::zero(); nvars];
            e[i] = Rational::one();
            k.intern(&e);
        }
        k
    }

    /// Id of the pure form `t_i`.
    pub fn pure_id(&self, i: usize) -> u32 {
        i as u32
    }

    /// Interns `form = scale · F` with `F` monic in its highest variable.
    pub fn intern(&mut self, form: &[Rational]) -> (u32, Rational) {
        let lead = form.iter().rposition(|x| !x.is_zero()).expect("denominator forms are nonzero");
        let scale = form[lead].clone();
        let normalized: Vec<Rational> = form.iter().map(|x| x / &scale).collect();
        if let Some(&id) = self.index.get(&normalized) {
            return (id, scale);
        }
        let mut rest = normalized.clone();
        rest[lead] = Rational::zero();
        let mixed = if rest.iter().all(Zero::is_zero) { None } else { Some(self.intern(&rest)) };
        let id = self.forms.len() as u32;
        self.forms.push(FormInfo { lead, mixed });
        self.index.insert(normalized, id);
        (id, scale)
    }

    /// Terms of `expr` before any elimination, keyed by denominator.
    pub fn initial_terms<C: Coeff>(&mut self, expr: &FractionExpr<C>) -> Result<FxHashMap<Key, C>> {
        let r = self.nvars;
        let n = expr.pole_order() as usize;
        let needed = n.saturating_sub(r);
        if expr.series.cap() < needed {
            return Err(Error::InsufficientTruncation { needed, have: expr.series.cap() });
        }
        for f in &expr.univariate {
            if !f.is_empty() && f.len() < needed + 1 {
                return Err(Error::InsufficientTruncation { needed, have: f.len().saturating_sub(1) });
            }
        }
        let mut base: Key = SmallVec::new();
        let mut scale = Rational::one();
        for (form, p) in &expr.denominator {
            let (id, c) = self.intern(form);
            scale *= rpow(&c, -(*p as i32));
            base.push((id, *p as i32));
        }
        let mut out: FxHashMap<Key, C> = FxHashMap::default();
        for (exps, c) in expr.series.terms() {
            let mut key = base.clone();
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    key.push((self.pure_id(i), -(e as i32)));
                }
            }
            let key = normalize_key(key);
            let v = c.scale(&scale);
            match out.get_mut(&key) {
                Some(acc) => acc.add_assign_ref(&v),
                None => {
                    out.insert(key, v);
                }
            }
        }
        Ok(out)
    }

    // coefficients a_n with (t + c m)^{-q} = Σ a_n t^n m^{-q-n}
    fn mixed_series<C: Coeff>(c: &Rational, q: i32, len: usize) -> Vec<C> {
        let mut out = Vec::with_capacity(len);
        let mut a = C::from_rational(&rpow(c, -q));
        let cinv = c.recip();
        for n in 0..len {
            out.push(a.clone());
            if n + 1 < len {
                let step = Rational::from_integer((-q - n as i32).into()) / Rational::from_integer((n as i64 + 1).into()) * &cinv;
                a = a.scale(&step);
            }
        }
        out
    }

    fn convolve<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
        let len = a.len().min(b.len());
        (0..len)
            .map(|n| {
                let mut acc = C::nil();
                for i in 0..=n {
                    acc.add_assign_ref(&a[i].mul_ref(&b[n - i]));
                }
                acc
            })
            .collect()
    }

    /// Eliminates `t_r, …, t_1` and returns the constant term.
    pub fn eliminate<C: Coeff>(&self, mut terms: FxHashMap<Key, C>, univariate: &[Vec<C>]) -> Result<C> {
        let one = vec![C::unit()];
        for k in (0..self.nvars).rev() {
            let f = if univariate[k].is_empty() { &one } else { &univariate[k] };
            terms = self.stage(k, terms, f)?;
        }
        let mut total = C::nil();
        for (key, c) in terms {
            if !key.is_empty() {
                return Err(Error::Internal(format!("leftover denominator {key:?} after elimination")));
            }
            total.add_assign_ref(&c);
        }
        Ok(total)
    }

    fn stage<C: Coeff>(&self, k: usize, terms: FxHashMap<Key, C>, f: &[C]) -> Result<FxHashMap<Key, C>> {
        let pure = self.pure_id(k);
        let mut out: FxHashMap<Key, C> = FxHashMap::default();
        let full = terms
            .keys()
            .filter_map(|key| key.iter().find(|&&(id, _)| id == pure).map(|&(_, p)| p.max(0) as usize))
            .max()
            .unwrap_or(0);
        let mut single: FxHashMap<(u32, i32), Vec<C>> = FxHashMap::default();
        let mut cache: FxHashMap<SmallVec<[(u32, i32); 4]>, Vec<C>> = FxHashMap::default();
        for (key, coeff) in terms {
            let p = key.iter().find(|&&(id, _)| id == pure).map_or(0, |&(_, p)| p);
            if p <= 0 {
                continue;
            }
            let len = p as usize;
            let mut pass: Key = SmallVec::new();
            // (target form, factor, power), grouped by target form
            let mut mixed: SmallVec<[(u32, u32, i32); 12]> = SmallVec::new();
            for &(id, q) in &key {
                if id == pure {
                    continue;
                }
                let info = &self.forms[id as usize];
                if info.lead != k {
                    pass.push((id, q));
                    continue;
                }
                let (m, _) = info.mixed.as_ref().expect("non-pure form with lead k is mixed");
                mixed.push((*m, id, q));
            }
            mixed.sort_unstable();
            let mut specs: Vec<(u32, i32, SmallVec<[(u32, i32); 4]>)> = Vec::new();
            let mut i = 0;
            while i < mixed.len() {
                let m = mixed[i].0;
                let j = i + mixed[i..].iter().take_while(|x| x.0 == m).count();
                let members: SmallVec<[(u32, i32); 4]> = mixed[i..j].iter().map(|x| (x.1, x.2)).collect();
                let total: i32 = members.iter().map(|x| x.1).sum();
                if !cache.contains_key(&members) {
                    let mut series: Option<Vec<C>> = None;
                    for &(id, q) in &members {
                        let s = single.entry((id, q)).or_insert_with(|| {
                            let c = &self.forms[id as usize].mixed.as_ref().unwrap().1;
                            Self::mixed_series(c, q, full)
                        });
                        series = Some(match series {
                            None => s.clone(),
                            Some(acc) => Self::convolve(&acc, s),
                        });
                    }
                    cache.insert(members.clone(), series.unwrap());
                }
                specs.push((m, total, members));
                i = j;
            }
            let groups: Vec<(u32, i32, &[C])> =
                specs.into_iter().map(|(m, total, members)| (m, total, &cache[&members][..len])).collect();
            let cf: Vec<Option<C>> = (0..len)
                .map(|a| f.get(a).filter(|x| !x.is_nil()).map(|x| coeff.mul_ref(x)))
                .collect();
            let mut choice = vec![0usize; groups.len()];
            self.enumerate(0, len - 1, C::unit(), &groups, &cf, &pass, &mut choice, &mut out);
        }
        out.retain(|_, c| !c.is_nil());
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate<C: Coeff>(
        &self,
        g: usize,
        remaining: usize,
        partial: C,
        groups: &[(u32, i32, &[C])],
        cf: &[Option<C>],
        pass: &Key,
        choice: &mut Vec<usize>,
        out: &mut FxHashMap<Key, C>,
    ) {
        if g == groups.len() {
            let Some(c) = &cf[remaining] else {
                return;
            };
            let mut key = pass.clone();
            for (i, (m, q, _)) in groups.iter().enumerate() {
                key.push((*m, q + choice[i] as i32));
            }
            let key = normalize_key(key);
            let v = c.mul_ref(&partial);
            match out.get_mut(&key) {
                Some(acc) => acc.add_assign_ref(&v),
                None => {
                    out.insert(key, v);
                }
            }
            return;
        }
        let seq = &groups[g].2;
        for n in 0..=remaining {
            if seq[n].is_nil() {
                continue;
            }
            choice[g] = n;
            self.enumerate(g + 1, remaining - n, partial.mul_ref(&seq[n]), groups, cf, pass, choice, out);
        }
    }
}

/// Residue of a prepared term map (used when the same denominators are shared).
pub fn residue_of_terms<C: Coeff>(kernel: &Kernel, terms: FxHashMap<Key, C>, univariate: &[Vec<C>]) -> Result<C> {
    kernel.eliminate(terms, univariate)
}
