use crate::arith::RatFunc;
use crate::error::{Error, Result};
use crate::skewring::SkewElement;

/// Right Ore witness: for a nonzero `G`-invariant polynomial `s` and any
/// `u`, returns `(u', r)` with `r` a nonzero `G`-invariant polynomial and
/// `u'` polynomial-coefficient such that `u·r = s·u'`.
///
/// With `ℓ_μ` the coefficients of `s⁻¹u`: `d = Π_μ μ⁻¹(s·den ℓ_μ)`,
/// `r = Π_{g ∈ G} g(d)`, `u' = s⁻¹u·r`.
pub fn ore_witness(s: &RatFunc, u: &SkewElement) -> Result<(SkewElement, RatFunc)> {
    let ctx = u.context();
    if s.is_zero() {
        return Err(Error::Precondition("s must be nonzero".into()));
    }
    if !s.is_polynomial() {
        return Err(Error::Precondition("s must be a polynomial".into()));
    }
    for (g, _) in ctx.group().elements() {
        if ctx.act_group(g, s)? != *s {
            return Err(Error::Precondition("s is not G-invariant".into()));
        }
    }
    let s_inv = s.inv()?;
    let v = u.scale_left(&s_inv)?;
    let mut d = RatFunc::one(ctx.nvars());
    for (mu, l) in v.terms() {
        let cleared = s.checked_mul(&RatFunc::from_poly(l.den().clone()))?;
        let back = ctx.inverse(mu)?;
        d = d.checked_mul(&ctx.act(&back, &cleared)?)?;
    }
    let mut r = RatFunc::one(ctx.nvars());
    for (g, _) in ctx.group().elements() {
        r = r.checked_mul(&ctx.act_group(g, &d)?)?;
    }
    let u_prime = v.checked_mul(&SkewElement::from_coeff(ctx, r.clone()))?;
    Ok((u_prime, r))
}
