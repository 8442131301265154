//! Exact multivariate GCD over the rationals.
//!
//! Recursive content/primitive-part decomposition with respect to one
//! variable at a time, and a primitive pseudo-remainder sequence in that
//! variable. No modular or probabilistic steps.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::Polynomial;

/// Monic greatest common divisor. `gcd(p, 0)` is `p` made monic;
/// `gcd(0, 0)` is zero.
pub fn gcd(p: &Polynomial, q: &Polynomial) -> Polynomial {
    assert_eq!(p.nvars(), q.nvars(), "gcd of polynomials over different variable tables");
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    let n = p.nvars();
    if p.is_constant() || q.is_constant() {
        return Polynomial::one(n);
    }
    let mp = p.monomial_content();
    let mq = q.monomial_content();
    let mg = mp.gcd(&mq);
    let p1 = p.div_monomial(&mp).expect("monomial content divides");
    let q1 = q.div_monomial(&mq).expect("monomial content divides");
    let g = gcd_core(&p1, &q1);
    g.mul_monomial(&mg, &BigRational::one()).monic()
}

/// Least common multiple, monic.
pub fn lcm(p: &Polynomial, q: &Polynomial) -> Polynomial {
    if p.is_zero() || q.is_zero() {
        return Polynomial::zero(p.nvars());
    }
    let g = gcd(p, q);
    let pg = p.div_exact(&g).expect("gcd divides");
    (&pg * q).monic()
}

fn gcd_core(p: &Polynomial, q: &Polynomial) -> Polynomial {
    let n = p.nvars();
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    if p.is_constant() || q.is_constant() {
        return Polynomial::one(n);
    }
    if p.monic() == q.monic() {
        return p.monic();
    }
    // Cheap divisibility test before running a remainder sequence.
    let (small, large) = if p.num_terms() <= q.num_terms() { (p, q) } else { (q, p) };
    if small.degree() <= large.degree() && large.div_exact(small).is_some() {
        return small.monic();
    }

    let vp = p.vars_present();
    let vq = q.vars_present();
    if let Some(v) = (0..n).find(|&i| vp[i] && !vq[i]) {
        return gcd(&content_in(p, v), q);
    }
    if let Some(v) = (0..n).find(|&i| vq[i] && !vp[i]) {
        return gcd(p, &content_in(q, v));
    }

    let v = (0..n)
        .filter(|&i| vp[i])
        .min_by_key(|&i| p.degree_in(i).max(q.degree_in(i)))
        .expect("non-constant polynomial has a variable");

    let cp = content_in(p, v);
    let cq = content_in(q, v);
    let c = gcd(&cp, &cq);
    let pp = p.div_exact(&cp).expect("content divides");
    let qq = q.div_exact(&cq).expect("content divides");
    let g = primitive_prs(pp, qq, v);
    (&c * &g).monic()
}

/// GCD of the coefficients of `p` viewed as a polynomial in `var`.
pub(crate) fn content_in(p: &Polynomial, var: usize) -> Polynomial {
    let mut coeffs: Vec<Polynomial> = p.coeffs_in(var).into_iter().filter(|c| !c.is_zero()).collect();
    coeffs.sort_by_key(Polynomial::num_terms);
    let mut acc = Polynomial::zero(p.nvars());
    for c in &coeffs {
        acc = gcd(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn primitive_in(p: &Polynomial, var: usize) -> Polynomial {
    let c = content_in(p, var);
    p.div_exact(&c).expect("content divides")
}

fn primitive_prs(a: Polynomial, b: Polynomial, var: usize) -> Polynomial {
    let (mut a, mut b) = if a.degree_in(var) >= b.degree_in(var) { (a, b) } else { (b, a) };
    loop {
        let r = pseudo_remainder(&a, &b, var);
        if r.is_zero() {
            return primitive_in(&b, var).monic();
        }
        if r.degree_in(var) == Some(0) {
            return Polynomial::one(a.nvars());
        }
        a = b;
        b = primitive_in(&r, var);
    }
}

/// `lc(b)^k · a mod b` in the variable `var`, with numeric content removed.
fn pseudo_remainder(a: &Polynomial, b: &Polynomial, var: usize) -> Polynomial {
    let db = b.degree_in(var).expect("nonzero divisor");
    let lb = b.leading_coeff_in(var);
    let n = a.nvars();
    let mut r = a.clone();
    while let Some(dr) = r.degree_in(var) {
        if dr < db || r.is_zero() {
            break;
        }
        let lr = r.leading_coeff_in(var);
        let shift = Polynomial::var_power(n, var, dr - db);
        let sub = (&lr * b).mul_monomial(&shift, &BigRational::one());
        r = &(&lb * &r) - &sub;
        let c = r.content();
        if !c.is_zero() && !c.is_one() {
            r = r.scale(&c.recip());
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn v(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }
    fn k(n: usize, c: i64) -> Polynomial {
        Polynomial::constant(n, BigRational::from_integer(BigInt::from(c)))
    }

    #[test]
    fn univariate_common_factor() {
        let x = v(1, 0);
        let a = &x * &x - k(1, 1);
        let b = &x - &k(1, 1);
        assert_eq!(gcd(&a, &b), b);
    }

    #[test]
    fn gcd_with_zero_is_monic() {
        let x = v(1, 0);
        let p = x.scale(&BigRational::from_integer(3.into())) + k(1, 6);
        assert_eq!(gcd(&p, &Polynomial::zero(1)), x + k(1, 2));
    }

    #[test]
    fn monomial_factor() {
        let x = v(2, 0);
        let y = v(2, 1);
        assert_eq!(gcd(&(&x * &y), &x), x);
    }

    #[test]
    fn bivariate_hidden_factor() {
        let x = v(3, 0);
        let y = v(3, 1);
        let z = v(3, 2);
        let f = &x - &y;
        let a = &f * &(&(&x * &z) + &k(3, 2));
        let b = &f * &(&(&y * &y) - &z);
        assert_eq!(gcd(&a, &b), f);
        let c = &(&x + &y) * &(&x + &z);
        assert!(gcd(&a, &c).is_one());
    }

    #[test]
    fn lcm_of_linear_factors() {
        let x = v(2, 0);
        let y = v(2, 1);
        let a = &(&x - &y) * &x;
        let b = &(&x - &y) * &y;
        assert_eq!(lcm(&a, &b), (&(&x - &y) * &(&x * &y)).monic());
    }
}
