use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::Polynomial;
use crate::error::{Error, Result};

/// Element of the rational function field, kept in canonical form:
/// numerator and denominator coprime, denominator with leading
/// coefficient one. Zero is `0/1`. Structural equality is equality of
/// functions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Polynomial,
    den: Polynomial,
}

impl RatFunc {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if num.nvars() != den.nvars() {
            return Err(Error::ContextMismatch("numerator and denominator tables differ".into()));
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        Ok(Self::from_coprime(num, den))
    }

    /// Builds from parts already known to be coprime; only rescales the
    /// denominator to be monic.
    pub(crate) fn from_coprime(num: Polynomial, den: Polynomial) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return RatFunc { num, den: Polynomial::one(n) };
        }
        match den.leading_coeff() {
            Some(lc) if !lc.is_one() => {
                let inv = lc.recip();
                RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
            }
            _ => RatFunc { num, den },
        }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let n = p.nvars();
        RatFunc { num: p, den: Polynomial::one(n) }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(Polynomial::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Polynomial::one(nvars))
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::from_poly(Polynomial::constant(nvars, c))
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::from_poly(Polynomial::from_int(nvars, c))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_poly(Polynomial::var(nvars, i))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn into_parts(self) -> (Polynomial, Polynomial) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    fn check_same(&self, other: &RatFunc) -> Result<()> {
        if self.nvars() != other.nvars() {
            return Err(Error::ContextMismatch(format!(
                "rational functions over {} and {} variables",
                self.nvars(),
                other.nvars()
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &RatFunc) -> Result<RatFunc> {
        self.check_same(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.den == other.den {
            let num = &self.num + &other.num;
            if self.den.is_one() {
                return Ok(RatFunc::from_poly(num));
            }
            return RatFunc::new(num, self.den.clone());
        }
        if self.den.is_one() {
            return Ok(RatFunc::from_coprime(&(&self.num * &other.den) + &other.num, other.den.clone()));
        }
        if other.den.is_one() {
            return Ok(RatFunc::from_coprime(&(&other.num * &self.den) + &self.num, self.den.clone()));
        }
        let g = gcd(&self.den, &other.den);
        if g.is_one() {
            let num = &(&self.num * &other.den) + &(&other.num * &self.den);
            return Ok(RatFunc::from_coprime(num, &self.den * &other.den));
        }
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = other.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d1) + &(&other.num * &b1);
        // Any common factor of num and b1*d1*g already lies in g.
        let h = gcd(&num, &g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (num.div_exact(&h).expect("gcd divides"), g.div_exact(&h).expect("gcd divides"))
        };
        Ok(RatFunc::from_coprime(num, &(&b1 * &d1) * &g))
    }

    pub fn checked_sub(&self, other: &RatFunc) -> Result<RatFunc> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &RatFunc) -> Result<RatFunc> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(RatFunc::zero(self.nvars()));
        }
        if self.den.is_one() && other.den.is_one() {
            return Ok(RatFunc::from_poly(&self.num * &other.num));
        }
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let a = self.num.div_exact(&g1).expect("gcd divides");
        let d = other.den.div_exact(&g1).expect("gcd divides");
        let c = other.num.div_exact(&g2).expect("gcd divides");
        let b = self.den.div_exact(&g2).expect("gcd divides");
        Ok(RatFunc::from_coprime(&a * &c, &b * &d))
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc> {
        self.checked_mul(&other.inv()?)
    }

    pub fn scale(&self, c: &BigRational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, k: i64) -> Result<RatFunc> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = k.unsigned_abs() as u32;
        Ok(RatFunc { num: base.num.pow(e), den: base.den.pow(e) }.renormalized_monic())
    }

    fn renormalized_monic(self) -> RatFunc {
        RatFunc::from_coprime(self.num, self.den)
    }

    /// Re-normalizes from scratch. Idempotent on canonical values.
    pub fn normalize(&self) -> RatFunc {
        RatFunc::new(self.num.clone(), self.den.clone()).expect("canonical denominator is nonzero")
    }

    /// Substitutes `x_i ↦ images[i]` for each listed variable; variables
    /// without an entry are left unchanged only if they do not occur.
    pub fn substitute(&self, images: &BTreeMap<usize, RatFunc>) -> Result<RatFunc> {
        let n = self.nvars();
        let present = {
            let mut p = self.num.vars_present();
            for (s, d) in p.iter_mut().zip(self.den.vars_present()) {
                *s |= d;
            }
            p
        };
        for (i, &occurs) in present.iter().enumerate() {
            if occurs && !images.contains_key(&i) {
                return Err(Error::MissingImage(i));
            }
        }
        let target = images.values().next().map_or(n, RatFunc::nvars);
        if images.values().any(|r| r.nvars() != target) {
            return Err(Error::ContextMismatch("substitution images over different tables".into()));
        }
        if images.keys().any(|&i| i >= n) {
            return Err(Error::ContextMismatch("substitution for a variable outside the table".into()));
        }
        let full: Vec<Option<&RatFunc>> = (0..n).map(|i| images.get(&i)).collect();
        let num = eval_poly(&self.num, &full, target)?;
        let den = eval_poly(&self.den, &full, target)?;
        if den.is_zero() {
            return Err(Error::DegenerateSubstitution);
        }
        num.checked_div(&den)
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(point) / d)
    }

    /// Applies a polynomial map to numerator and denominator separately.
    /// Valid when `f` is a ring automorphism of the polynomial ring, which
    /// preserves coprimality.
    pub(crate) fn map_automorphic<F>(&self, f: F) -> RatFunc
    where
        F: Fn(&Polynomial) -> Polynomial,
    {
        if self.den.is_one() {
            return RatFunc::from_poly(f(&self.num));
        }
        RatFunc::from_coprime(f(&self.num), f(&self.den))
    }

    pub fn to_text(&self, names: &[String]) -> String {
        if self.den.is_one() {
            self.num.to_text(names)
        } else {
            format!("({})/({})", self.num.to_text(names), self.den.to_text(names))
        }
    }
}

fn eval_poly(p: &Polynomial, images: &[Option<&RatFunc>], target: usize) -> Result<RatFunc> {
    let mut powers: Vec<Vec<RatFunc>> = vec![vec![RatFunc::one(target)]; images.len()];
    let mut acc = RatFunc::zero(target);
    for (m, c) in p.terms() {
        let mut term = RatFunc::constant(target, c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let img = images[i].ok_or(Error::MissingImage(i))?;
            while powers[i].len() <= e as usize {
                let next = powers[i].last().unwrap().checked_mul(img)?;
                powers[i].push(next);
            }
            term = term.checked_mul(&powers[i][e as usize])?;
        }
        acc = acc.checked_add(&term)?;
    }
    Ok(acc)
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                self.$checked(rhs).expect("rational functions over different variable tables")
            }
        }
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl From<Polynomial> for RatFunc {
    fn from(p: Polynomial) -> Self {
        RatFunc::from_poly(p)
    }
}
