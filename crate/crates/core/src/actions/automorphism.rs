use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::group::Permutation;
use crate::arith::{Monomial, Polynomial, RatFunc};
use crate::error::{Error, Result};

/// Field automorphism of `L = Q(x_1, ..., x_n)`, given by images of the
/// variables. Shift, scaling and permutation inverses are computed; the
/// general kind carries a certified inverse.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Automorphism {
    /// `x_i ↦ x_i + offsets[i]`.
    Shift { offsets: Vec<BigRational> },
    /// `x_i ↦ m_i · x_i`, with `m_i` the Laurent monomial whose exponent
    /// vector is `multipliers[i]` (nonzero only on parameter variables).
    Scaling { multipliers: Vec<Vec<i64>> },
    /// `x_i ↦ x_{σ(i)}`.
    Permutation(Permutation),
    /// Arbitrary images with images of the inverse map.
    General { images: Vec<RatFunc>, inverse: Vec<RatFunc> },
}

impl Automorphism {
    pub fn identity(nvars: usize) -> Self {
        Automorphism::Shift { offsets: vec![BigRational::zero(); nvars] }
    }

    /// Checks that the two image lists are mutually inverse substitutions.
    pub fn general(images: Vec<RatFunc>, inverse: Vec<RatFunc>) -> Result<Self> {
        let n = images.len();
        if inverse.len() != n || images.iter().chain(&inverse).any(|r| r.nvars() != n) {
            return Err(Error::ContextMismatch("automorphism images over the wrong table".into()));
        }
        let forward = Automorphism::General { images: images.clone(), inverse: inverse.clone() };
        let backward = Automorphism::General { images: inverse.clone(), inverse: images.clone() };
        for i in 0..n {
            let x = RatFunc::var(n, i);
            if forward.apply(&backward.apply(&x)?)? != x || backward.apply(&forward.apply(&x)?)? != x {
                return Err(Error::Parameter(format!(
                    "supplied inverse does not invert the map on variable {i}"
                )));
            }
        }
        Ok(forward)
    }

    pub fn nvars(&self) -> usize {
        match self {
            Automorphism::Shift { offsets } => offsets.len(),
            Automorphism::Scaling { multipliers } => multipliers.len(),
            Automorphism::Permutation(p) => p.len(),
            Automorphism::General { images, .. } => images.len(),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Automorphism::Shift { offsets } => offsets.iter().all(Zero::is_zero),
            Automorphism::Scaling { multipliers } => multipliers.iter().flatten().all(|&e| e == 0),
            Automorphism::Permutation(p) => p.is_identity(),
            Automorphism::General { images, .. } => {
                let n = images.len();
                images.iter().enumerate().all(|(i, r)| *r == RatFunc::var(n, i))
            }
        }
    }

    pub fn apply(&self, f: &RatFunc) -> Result<RatFunc> {
        if f.nvars() != self.nvars() {
            return Err(Error::ContextMismatch(format!(
                "automorphism on {} variables applied to a function of {}",
                self.nvars(),
                f.nvars()
            )));
        }
        match self {
            Automorphism::Shift { offsets } => {
                if offsets.iter().all(Zero::is_zero) {
                    return Ok(f.clone());
                }
                Ok(f.map_automorphic(|p| p.shift(offsets)))
            }
            Automorphism::Permutation(p) => Ok(f.map_automorphic(|q| q.permute(p.images()))),
            Automorphism::Scaling { multipliers } => Ok(apply_scaling(f, multipliers)),
            Automorphism::General { images, .. } => {
                let map: BTreeMap<usize, RatFunc> = images.iter().cloned().enumerate().collect();
                f.substitute(&map)
            }
        }
    }

    pub fn apply_poly(&self, p: &Polynomial) -> Result<RatFunc> {
        self.apply(&RatFunc::from_poly(p.clone()))
    }

    pub fn inverse(&self) -> Automorphism {
        match self {
            Automorphism::Shift { offsets } => Automorphism::Shift { offsets: offsets.iter().map(|o| -o).collect() },
            Automorphism::Scaling { multipliers } => Automorphism::Scaling {
                multipliers: multipliers.iter().map(|m| m.iter().map(|e| -e).collect()).collect(),
            },
            Automorphism::Permutation(p) => Automorphism::Permutation(p.inverse()),
            Automorphism::General { images, inverse } => {
                Automorphism::General { images: inverse.clone(), inverse: images.clone() }
            }
        }
    }

    /// `self^k`, negative `k` allowed.
    pub fn power(&self, k: i64) -> Result<Automorphism> {
        if k < 0 {
            return self.inverse().power(-k);
        }
        let kr = BigRational::from_integer(BigInt::from(k));
        Ok(match self {
            Automorphism::Shift { offsets } => Automorphism::Shift { offsets: offsets.iter().map(|o| o * &kr).collect() },
            Automorphism::Scaling { multipliers } => Automorphism::Scaling {
                multipliers: multipliers.iter().map(|m| m.iter().map(|e| e * k).collect()).collect(),
            },
            Automorphism::Permutation(p) => {
                let mut acc = Permutation::identity(p.len());
                for _ in 0..k {
                    acc = p.compose(&acc);
                }
                Automorphism::Permutation(acc)
            }
            Automorphism::General { .. } => {
                let n = self.nvars();
                let mut acc = Automorphism::identity(n);
                for _ in 0..k {
                    acc = self.then_general(&acc)?;
                }
                acc
            }
        })
    }

    /// `self ∘ inner` as a general automorphism.
    fn then_general(&self, inner: &Automorphism) -> Result<Automorphism> {
        let n = self.nvars();
        let inv_self = self.inverse();
        let inv_inner = inner.inverse();
        let mut images = Vec::with_capacity(n);
        let mut inverse = Vec::with_capacity(n);
        for i in 0..n {
            let x = RatFunc::var(n, i);
            images.push(self.apply(&inner.apply(&x)?)?);
            inverse.push(inv_inner.apply(&inv_self.apply(&x)?)?);
        }
        Ok(Automorphism::General { images, inverse })
    }

    /// Image of the variable `i`.
    pub fn image_of_var(&self, i: usize) -> Result<RatFunc> {
        self.apply(&RatFunc::var(self.nvars(), i))
    }

    /// Whether two automorphisms agree on every variable.
    pub fn same_action(&self, other: &Automorphism) -> Result<bool> {
        for i in 0..self.nvars() {
            if self.image_of_var(i)? != other.image_of_var(i)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `self ∘ other = other ∘ self` on every variable.
    pub fn commutes_with(&self, other: &Automorphism) -> Result<bool> {
        for i in 0..self.nvars() {
            let x = RatFunc::var(self.nvars(), i);
            if self.apply(&other.apply(&x)?)? != other.apply(&self.apply(&x)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Variables whose image differs from themselves.
    pub fn moved_variables(&self) -> Result<Vec<usize>> {
        let n = self.nvars();
        let mut out = Vec::new();
        for i in 0..n {
            if self.image_of_var(i)? != RatFunc::var(n, i) {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// Linear coordinates of a shift or scaling map, used to identify
    /// conjugates with lattice vectors. `None` for other kinds.
    pub(crate) fn signature(&self) -> Option<Vec<BigRational>> {
        let n = self.nvars();
        match self {
            Automorphism::Shift { offsets } => {
                let mut v = offsets.clone();
                v.extend(std::iter::repeat_n(BigRational::zero(), n * n));
                Some(v)
            }
            Automorphism::Scaling { multipliers } => {
                let mut v = vec![BigRational::zero(); n];
                for m in multipliers {
                    v.extend(m.iter().map(|&e| BigRational::from_integer(BigInt::from(e))));
                }
                Some(v)
            }
            _ => None,
        }
    }

    /// `g ∘ self ∘ g⁻¹` for a variable permutation `g` fixing every variable
    /// that occurs in the multipliers.
    pub(crate) fn conjugate_by(&self, g: &Permutation) -> Automorphism {
        let n = self.nvars();
        match self {
            Automorphism::Shift { offsets } => {
                let mut out = vec![BigRational::zero(); n];
                for (j, o) in offsets.iter().enumerate() {
                    out[g.apply(j)] = o.clone();
                }
                Automorphism::Shift { offsets: out }
            }
            Automorphism::Scaling { multipliers } => {
                let mut out = vec![vec![0; n]; n];
                for (j, m) in multipliers.iter().enumerate() {
                    let mut pm = vec![0; n];
                    for (v, &e) in m.iter().enumerate() {
                        pm[g.apply(v)] = e;
                    }
                    out[g.apply(j)] = pm;
                }
                Automorphism::Scaling { multipliers: out }
            }
            Automorphism::Permutation(p) => Automorphism::Permutation(g.compose(p).compose(&g.inverse())),
            Automorphism::General { images, inverse } => {
                let gi = g.inverse();
                let conj = |imgs: &[RatFunc]| -> Vec<RatFunc> {
                    (0..n)
                        .map(|k| imgs[gi.apply(k)].map_automorphic(|p| p.permute(g.images())))
                        .collect()
                };
                Automorphism::General { images: conj(images), inverse: conj(inverse) }
            }
        }
    }
}

/// Applies `x_i ↦ m_i x_i` to a polynomial, returning the image multiplied
/// by the smallest monomial that clears negative exponents, and that monomial.
fn scale_poly(p: &Polynomial, multipliers: &[Vec<i64>]) -> (Polynomial, Monomial) {
    let n = p.nvars();
    let mut raw: Vec<(Vec<i64>, BigRational)> = Vec::with_capacity(p.num_terms());
    let mut lowest = vec![0i64; n];
    for (m, c) in p.terms() {
        let mut e: Vec<i64> = m.exponents().iter().map(|&x| x as i64).collect();
        for (i, &x) in m.exponents().iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (v, &a) in multipliers[i].iter().enumerate() {
                e[v] += a * x as i64;
            }
        }
        for (lo, &x) in lowest.iter_mut().zip(&e) {
            *lo = (*lo).min(x);
        }
        raw.push((e, c.clone()));
    }
    let clear: Vec<u32> = lowest.iter().map(|&lo| (-lo) as u32).collect();
    let terms = raw.into_iter().map(|(e, c)| {
        let exps = e.iter().zip(&clear).map(|(&x, &k)| (x + k as i64) as u32).collect();
        (Monomial::from_exponents(exps), c)
    });
    (Polynomial::from_terms(n, terms), Monomial::from_exponents(clear))
}

fn apply_scaling(f: &RatFunc, multipliers: &[Vec<i64>]) -> RatFunc {
    let (num, num_clear) = scale_poly(f.num(), multipliers);
    let (den, den_clear) = scale_poly(f.den(), multipliers);
    let one = BigRational::one();
    // num/num_clear ÷ den/den_clear
    let num = num.mul_monomial(&den_clear, &one);
    let den = den.mul_monomial(&num_clear, &one);
    // Common factors can only be monomials in the parameters.
    let common = num.monomial_content().gcd(&den.monomial_content());
    let num = num.div_monomial(&common).expect("common monomial divides");
    let den = den.div_monomial(&common).expect("common monomial divides");
    RatFunc::from_coprime(num, den)
}
