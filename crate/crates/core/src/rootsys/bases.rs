use num_traits::{One, Signed, Zero};

use super::{Family, RootSystem};
use crate::error::{Error, Result};
use crate::exact::linalg::{det, inverse, mat_vec, transpose, Matrix};
use crate::exact::Rational;

/// The two arrangements handled directly by the residue engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Arrangement {
    /// `z_i - z_j = 0` in `r+1` sum-zero coordinates, lattice `Q̌_A`.
    A(usize),
    /// `z_i = 0`, `z_i ± z_j = 0`, lattice `Z^r`.
    BC(usize),
}

impl Arrangement {
    pub fn rank(&self) -> usize {
        match *self {
            Arrangement::A(r) | Arrangement::BC(r) => r,
        }
    }

    /// The root system whose coroots are the equations.
    pub fn system(&self) -> RootSystem {
        match *self {
            Arrangement::A(r) => RootSystem::new_unchecked(Family::A, r),
            Arrangement::BC(r) => RootSystem::new_unchecked(Family::C, r),
        }
    }

    /// Equations in working coordinates, in the canonical order of [`Self::system`].
    pub fn equations(&self) -> Vec<Vec<Rational>> {
        let s = self.system();
        s.positive_roots().into_iter().map(|l| s.coroot_work(l)).collect()
    }

    pub fn equation_names(&self) -> Vec<String> {
        let s = self.system();
        s.positive_roots().into_iter().map(|l| s.coroot_string(l)).collect()
    }
}

/// An ordered basis of `V` made of (signed) equations, with its coordinate map.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderedBasis {
    pub vectors: Vec<Vec<Rational>>,
    pub names: Vec<String>,
    /// `c = to_sigma · v` gives `v = Σ c_i α_i`.
    pub to_sigma: Matrix,
    pub unimodular: bool,
}

impl OrderedBasis {
    pub fn new(vectors: Vec<Vec<Rational>>, names: Vec<String>) -> Result<Self> {
        let cols = transpose(&vectors);
        let to_sigma = inverse(&cols)
            .ok_or_else(|| Error::InvalidArgument(format!("{names:?} is not a basis")))?;
        let unimodular = det(&cols).abs().is_one();
        Ok(OrderedBasis { vectors, names, to_sigma, unimodular })
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// `c_i^σ(v)` for `v` in working coordinates.
    pub fn coeffs(&self, v: &[Rational]) -> Vec<Rational> {
        mat_vec(&self.to_sigma, v)
    }
}

fn unit(n: usize, i: usize, c: i64) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::from_integer(c.into());
    v
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

/// `σ_w = [e^{w(1)}-e^{w(2)}, …, e^{w(r)}-e^{r+1}]` for all permutations `w` of `1..r`.
pub fn a_flag_bases(r: usize) -> Vec<OrderedBasis> {
    permutations(r)
        .into_iter()
        .map(|w| {
            let mut p: Vec<usize> = w.iter().map(|&x| x + 1).collect();
            p.push(r + 1);
            let mut vectors = Vec::with_capacity(r);
            let mut names = Vec::with_capacity(r);
            for k in 0..r {
                let (a, b) = (p[k], p[k + 1]);
                // e^a - e^b in working coordinates (the last coordinate is dropped)
                let mut v = vec![Rational::zero(); r];
                v[a - 1] += Rational::one();
                if b <= r {
                    v[b - 1] -= Rational::one();
                }
                vectors.push(v);
                names.push(format!("e^{a}-e^{b}"));
            }
            OrderedBasis::new(vectors, names).expect("flag bases are bases")
        })
        .collect()
}

/// Flag bases `α_i ∈ {e^i, e^i - e^j, e^i + e^j : j < i}`.
pub fn bc_flag_bases(r: usize) -> Vec<OrderedBasis> {
    let mut choices: Vec<Vec<(Vec<Rational>, String)>> = Vec::with_capacity(r);
    for i in 0..r {
        let mut c = vec![(unit(r, i, 1), format!("e^{}", i + 1))];
        for j in 0..i {
            let mut m = unit(r, i, 1);
            m[j] = -Rational::one();
            c.push((m, format!("e^{}-e^{}", i + 1, j + 1)));
            let mut p = unit(r, i, 1);
            p[j] = Rational::one();
            c.push((p, format!("e^{}+e^{}", i + 1, j + 1)));
        }
        choices.push(c);
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; r];
    loop {
        let (vectors, names) = idx.iter().enumerate().map(|(i, &k)| choices[i][k].clone()).unzip();
        out.push(OrderedBasis::new(vectors, names).expect("flag bases are bases"));
        let mut pos = r;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// The diagonal set used for a family: D_W for type A, flag bases for B and C.
pub fn flag_bases(sys: RootSystem) -> Result<Vec<OrderedBasis>> {
    match sys.family() {
        Family::A => Ok(a_flag_bases(sys.rank())),
        Family::B | Family::C => Ok(bc_flag_bases(sys.rank())),
        Family::D => Err(Error::InvalidArgument(
            "type D has no flag basis set; it is reduced to types B and C".into(),
        )),
    }
}
