use num_traits::Zero;

use super::{Family, RootSystem};
use crate::exact::Rational;

/// A signed permutation acting on ambient coordinates: `(w·v)[perm[i]] = signs[i]·v[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
    /// Determinant of the action on `V`.
    pub sign: i8,
}

impl WeylElement {
    pub fn act(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); v.len()];
        for (i, x) in v.iter().enumerate() {
            out[self.perm[i]] = if self.signs[i] < 0 { -x.clone() } else { x.clone() };
        }
        out
    }
}

fn perm_sign(p: &[usize]) -> i8 {
    let mut seen = vec![false; p.len()];
    let mut s = 1i8;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            s = -s;
        }
    }
    s
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in all_perms(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// The full Weyl group.
pub fn weyl_elements(sys: RootSystem) -> Vec<WeylElement> {
    let n = sys.ambient_dim();
    let perms = all_perms(n);
    let mut out = Vec::new();
    match sys.family() {
        Family::A => {
            for p in perms {
                let sign = perm_sign(&p);
                out.push(WeylElement { perm: p, signs: vec![1; n], sign });
            }
        }
        fam => {
            for p in perms {
                let ps = perm_sign(&p);
                for mask in 0u32..(1 << n) {
                    let flips = mask.count_ones();
                    if fam == Family::D && flips % 2 == 1 {
                        continue;
                    }
                    let signs: Vec<i8> =
                        (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
                    let sign = if flips % 2 == 1 { -ps } else { ps };
                    out.push(WeylElement { perm: p.clone(), signs, sign });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_and_signs() {
        for (f, r) in [(Family::A, 1), (Family::A, 3), (Family::B, 2), (Family::C, 3), (Family::D, 3), (Family::D, 4)] {
            let s = RootSystem::new(f, r).unwrap();
            let w = weyl_elements(s);
            assert_eq!(w.len() as u64, s.weyl_order());
            assert_eq!(w.iter().map(|e| e.sign as i64).sum::<i64>(), 0);
        }
    }
}
