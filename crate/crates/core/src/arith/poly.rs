use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use crate::error::{Error, Result};

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are kept in a map ordered by [`Monomial`]'s graded-lexicographic
/// order, so the leading term is the last entry. Zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(nvars, i), BigRational::one());
        p
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        let mut p = Self::zero(m.nvars());
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial length does not match variable count");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_zero() {
            Some(BigRational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing term order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Total degree; `None` stands for the degree of the zero polynomial (−∞).
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponents()[var]).max()
    }

    /// Which variables occur with a positive exponent.
    pub fn vars_present(&self) -> Vec<bool> {
        let mut seen = vec![false; self.nvars];
        for m in self.terms.keys() {
            for (s, &e) in seen.iter_mut().zip(m.exponents()) {
                *s |= e > 0;
            }
        }
        seen
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ContextMismatch(format!(
                "polynomials over {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let (mut acc, rest) = if self.terms.len() >= other.terms.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &rest.terms {
            acc.add_term(m.clone(), c.clone());
        }
        Ok(acc)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut acc = self.clone();
        for (m, c) in &other.terms {
            acc.add_term(m.clone(), -c);
        }
        Ok(acc)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        let mut acc = Polynomial::zero(self.nvars);
        if self.is_zero() || other.is_zero() {
            return Ok(acc);
        }
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                acc.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Rational content: the positive `c` with `self / c` having coprime
    /// integer coefficients. Zero for the zero polynomial.
    pub fn content(&self) -> BigRational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return BigRational::zero();
        }
        BigRational::new(num, den)
    }

    /// Scaled so that the leading coefficient is one. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    /// Componentwise minimum exponent over all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.nvars),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    /// Divides every term by a monomial that divides all of them.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Polynomial> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            terms.insert(k.div(m)?, c.clone());
        }
        Some(Polynomial { nvars: self.nvars, terms })
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder. Panics on a zero divisor.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert!(!divisor.is_zero(), "exact division by the zero polynomial");
        assert_eq!(self.nvars, divisor.nvars, "variable count mismatch");
        if self.is_zero() {
            return Some(self.clone());
        }
        let (dm, dc) = divisor.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        if divisor.is_monomial() {
            let inv = dc.recip();
            let mut terms = BTreeMap::new();
            for (k, c) in &self.terms {
                terms.insert(k.div(&dm)?, c * &inv);
            }
            return Some(Polynomial { nvars: self.nvars, terms });
        }
        if self.degree() < divisor.degree() {
            return None;
        }
        let inv = dc.recip();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(&dm)?;
            let qc = c * &inv;
            for (k, a) in &divisor.terms {
                rem.add_term(k.mul(&qm), -(a * &qc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Coefficients with respect to `var`: entry `k` is the coefficient of
    /// `var^k`, a polynomial in which `var` does not occur.
    pub fn coeffs_in(&self, var: usize) -> Vec<Polynomial> {
        let deg = match self.degree_in(var) {
            None => return Vec::new(),
            Some(d) => d as usize,
        };
        let mut out = vec![Polynomial::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exponents()[var] as usize;
            let mut stripped = m.clone();
            stripped.exps_mut()[var] = 0;
            out[k].add_term(stripped, c.clone());
        }
        out
    }

    /// Coefficient of the highest power of `var`.
    pub fn leading_coeff_in(&self, var: usize) -> Polynomial {
        let Some(deg) = self.degree_in(var) else {
            return Polynomial::zero(self.nvars);
        };
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.exponents()[var] == deg {
                let mut stripped = m.clone();
                stripped.exps_mut()[var] = 0;
                out.add_term(stripped, c.clone());
            }
        }
        out
    }

    pub fn var_power(nvars: usize, var: usize, k: u32) -> Monomial {
        let mut e = vec![0; nvars];
        e[var] = k;
        Monomial::from_exponents(e)
    }

    /// Simultaneous polynomial substitution `x_i ↦ images[i]`.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars {
            return Err(Error::ContextMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.nvars
            )));
        }
        let target = images.first().map_or(self.nvars, Polynomial::nvars);
        for img in images {
            if img.nvars != target {
                return Err(Error::ContextMismatch("images over different variable counts".into()));
            }
        }
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(target)]; self.nvars];
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Translation `x_i ↦ x_i + offsets[i]`.
    pub fn shift(&self, offsets: &[BigRational]) -> Polynomial {
        assert_eq!(offsets.len(), self.nvars);
        let moved: Vec<usize> = (0..self.nvars).filter(|&i| !offsets[i].is_zero()).collect();
        if moved.is_empty() {
            return self.clone();
        }
        let mut acc = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            // Expand each shifted factor binomially.
            let mut partial: Vec<(Monomial, BigRational)> = vec![(m.clone(), c.clone())];
            for &i in &moved {
                let e = m.exponents()[i];
                if e == 0 {
                    continue;
                }
                let o = &offsets[i];
                let mut next = Vec::with_capacity(partial.len() * (e as usize + 1));
                for (pm, pc) in &partial {
                    let mut binom = BigInt::one();
                    for k in 0..=e {
                        // x_i^(e-k) * o^k * C(e,k)
                        let coeff = pc * BigRational::from_integer(binom.clone()) * pow_rat(o, k);
                        let mut nm = pm.clone();
                        nm.exps_mut()[i] = e - k;
                        next.push((nm, coeff));
                        binom = binom * BigInt::from(e - k) / BigInt::from(k + 1);
                    }
                }
                partial = next;
            }
            for (pm, pc) in partial {
                acc.add_term(pm, pc);
            }
        }
        acc
    }

    /// Variable permutation: variable `i` is renamed to `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Polynomial {
        assert_eq!(perm.len(), self.nvars);
        let mut acc = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; self.nvars];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[perm[i]] = x;
            }
            acc.terms.insert(Monomial::from_exponents(e), c.clone());
        }
        acc
    }

    /// Re-embeds into a table with more (or fewer) variables; `map[i]` is
    /// the new index of old variable `i`. Panics if a dropped variable occurs.
    pub fn remap(&self, nvars: usize, map: &[Option<usize>]) -> Polynomial {
        let mut acc = Polynomial::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &x) in m.exponents().iter().enumerate() {
                if x > 0 {
                    let j = map[i].expect("remap dropped an occurring variable");
                    e[j] = x;
                }
            }
            acc.add_term(Monomial::from_exponents(e), c.clone());
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut acc = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e == 0 {
                continue;
            }
            let mut nm = m.clone();
            nm.exps_mut()[var] = e - 1;
            acc.add_term(nm, c * BigRational::from_integer(BigInt::from(e)));
        }
        acc
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= pow_rat(x, e);
                }
            }
            acc += t;
        }
        acc
    }

    /// Canonical text form: terms in decreasing term order, each written
    /// `coeff*x^e*...` with the coefficient always present.
    pub fn to_text(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            if idx > 0 {
                out.push_str(" + ");
            }
            write!(out, "{c}").unwrap();
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(out, "*{}", names[i]).unwrap(),
                    _ => write!(out, "*{}^{}", names[i], e).unwrap(),
                }
            }
        }
        out
    }

    /// True when every coefficient is an integer.
    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn is_negative_leading(&self) -> bool {
        self.leading_coeff().is_some_and(|c| c.is_negative())
    }
}

pub(crate) fn pow_rat(x: &BigRational, k: u32) -> BigRational {
    num_traits::pow(x.clone(), k as usize)
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial operands over different variable tables")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
