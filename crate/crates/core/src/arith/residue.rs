use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::poly::Polynomial;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

/// Multiplicity of the hyperplane `h = c` in the denominator of `r`.
pub fn pole_order(r: &RatFunc, h: &Polynomial, c: &BigRational) -> Result<usize> {
    let divisor = hyperplane(h, c)?;
    let mut den = r.den().clone();
    let mut order = 0;
    while let Some(q) = den.div_exact(&divisor) {
        den = q;
        order += 1;
    }
    Ok(order)
}

/// Residue of `r` along the hyperplane `h = c`: `((h − c)·r)` restricted
/// to the hyperplane, where the restriction solves `h = c` for the first
/// variable with a nonzero coefficient in `h`. Zero when `r` has no pole
/// there.
pub fn residue_along(r: &RatFunc, h: &Polynomial, c: &BigRational) -> Result<RatFunc> {
    let divisor = hyperplane(h, c)?;
    let order = pole_order(r, h, c)?;
    match order {
        0 => Ok(RatFunc::zero(r.nvars())),
        1 => {
            let rest = r.den().div_exact(&divisor).expect("pole order was computed by division");
            let lifted = RatFunc::new(r.num().clone(), rest)?;
            restrict_to_hyperplane(&lifted, h, c)
        }
        k => Err(Error::HigherOrderPole(k)),
    }
}

/// Restriction of `r` to `h = c` by eliminating one variable.
pub fn restrict_to_hyperplane(r: &RatFunc, h: &Polynomial, c: &BigRational) -> Result<RatFunc> {
    let n = r.nvars();
    hyperplane(h, c)?;
    let (var, coeff) = solved_variable(h).ok_or_else(|| Error::InvalidDivisor("no variable".into()))?;
    // x_var = (c − (h − coeff·x_var)) / coeff
    let rest = h - &Polynomial::var(n, var).scale(&coeff);
    let solved = (&Polynomial::constant(n, c.clone()) - &rest).scale(&coeff.recip());
    let mut images: BTreeMap<usize, RatFunc> = (0..n).map(|i| (i, RatFunc::var(n, i))).collect();
    images.insert(var, RatFunc::from_poly(solved));
    r.substitute(&images)
}

fn solved_variable(h: &Polynomial) -> Option<(usize, BigRational)> {
    let n = h.nvars();
    (0..n).find_map(|i| {
        let c = h.coefficient(&super::monomial::Monomial::var(n, i));
        (!c.is_zero()).then_some((i, c))
    })
}

fn hyperplane(h: &Polynomial, c: &BigRational) -> Result<Polynomial> {
    match h.degree() {
        None => Err(Error::InvalidDivisor("linear form is identically zero".into())),
        Some(0) => Err(Error::InvalidDivisor("linear form is constant".into())),
        Some(1) => Ok(h - &Polynomial::constant(h.nvars(), c.clone())),
        Some(d) => Err(Error::InvalidDivisor(format!("form of degree {d} is not linear"))),
    }
}
