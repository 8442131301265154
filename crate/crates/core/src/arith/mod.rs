//! Exact arithmetic tower: rationals, sparse multivariate polynomials under
//! graded-lexicographic order, and canonically normalized rational functions.

mod gcd;
mod monomial;
mod poly;
mod ratfunc;
mod residue;

pub use gcd::{gcd, lcm};
pub use monomial::Monomial;
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use poly::Polynomial;
pub use ratfunc::RatFunc;
pub use residue::{pole_order, residue_along, restrict_to_hyperplane};

/// `n/d` as an exact rational. Panics if `d` is zero.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `a` or `a/b` with integer `a`, `b`.
pub fn parse_rational(s: &str) -> crate::Result<BigRational> {
    let s = s.trim();
    let bad = || crate::Error::Parse(format!("not an exact rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(crate::Error::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

#[cfg(test)]
mod tests;
