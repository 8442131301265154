use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use num_traits::{One, Zero};

fn arb_poly(nvars: usize, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..3, nvars), -5i64..6), 0..=max_terms).prop_map(move |terms| {
        Polynomial::from_terms(nvars, terms.into_iter().map(|(e, c)| (Monomial::from_exponents(e), rat(c, 1))))
    })
}

fn arb_nonzero_poly(nvars: usize, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    arb_poly(nvars, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

fn arb_ratfunc(nvars: usize) -> impl Strategy<Value = RatFunc> {
    (arb_poly(nvars, 3), arb_nonzero_poly(nvars, 3)).prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
}

/// Brute-force trial division: does `d` divide `p`? Tries every candidate
/// quotient built from monomials up to a degree bound with coefficients
/// solved term by term, i.e. classical long division written out directly.
fn divides_by_long_division(d: &Polynomial, p: &Polynomial) -> bool {
    let mut rem = p.clone();
    let (dm, dc) = match d.leading_term() {
        Some((m, c)) => (m.clone(), c.clone()),
        None => return p.is_zero(),
    };
    for _ in 0..10_000 {
        let Some((m, c)) = rem.leading_term() else { return true };
        let Some(q) = m.div(&dm) else { return false };
        let factor = Polynomial::monomial(q, c / &dc);
        rem = &rem - &(&factor * d);
    }
    false
}

#[test]
fn gcd_of_difference_of_squares_matches_trial_division() {
    let x = Polynomial::var(1, 0);
    let one = Polynomial::one(1);
    let a = &(&x * &x) - &one;
    let b = &x - &one;
    // Candidate common divisors of degree ≤ 1: x − 1 divides both, x + 1 only a.
    assert!(divides_by_long_division(&b, &a) && divides_by_long_division(&b, &b));
    assert!(!divides_by_long_division(&(&x + &one), &b));
    assert_eq!(gcd(&a, &b), b);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(a in arb_ratfunc(2), b in arb_ratfunc(2), c in arb_ratfunc(2)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), RatFunc::one(2));
        }
    }

    #[test]
    fn normalization_is_canonical(a in arb_nonzero_poly(2, 3), b in arb_nonzero_poly(2, 3), c in arb_nonzero_poly(2, 3)) {
        let r = RatFunc::new(a.clone(), b.clone()).unwrap();
        let s = RatFunc::new(&a * &c, &b * &c).unwrap();
        prop_assert_eq!(&r, &s);
        prop_assert_eq!(r.normalize(), r.clone());
        prop_assert_eq!(r.den().leading_coeff().cloned(), Some(BigRational::one()));
    }

    #[test]
    fn gcd_divides_and_cofactors_are_coprime(p in arb_nonzero_poly(3, 3), q in arb_nonzero_poly(3, 3), f in arb_nonzero_poly(3, 2)) {
        let (p, q) = (&p * &f, &q * &f);
        let g = gcd(&p, &q);
        prop_assert!(divides_by_long_division(&g, &p));
        prop_assert!(divides_by_long_division(&g, &q));
        prop_assert!(divides_by_long_division(&f.monic(), &g));
        let pg = p.div_exact(&g).unwrap();
        let qg = q.div_exact(&g).unwrap();
        prop_assert!(gcd(&pg, &qg).is_one());
    }

    #[test]
    fn substitution_is_a_homomorphism(a in arb_ratfunc(2), b in arb_ratfunc(2), s in -3i64..4, t in 1i64..3) {
        let x = RatFunc::var(2, 0);
        let y = RatFunc::var(2, 1);
        let identity: BTreeMap<usize, RatFunc> = [(0, x.clone()), (1, y.clone())].into();
        prop_assert_eq!(a.substitute(&identity).unwrap(), a.clone());
        // x ↦ x + s·y, y ↦ t·y is invertible, so no denominator degenerates.
        let map: BTreeMap<usize, RatFunc> = [
            (0, &x + &y.scale(&rat(s, 1))),
            (1, y.scale(&rat(t, 1))),
        ].into();
        let sum = (&a + &b).substitute(&map).unwrap();
        prop_assert_eq!(sum, &a.substitute(&map).unwrap() + &b.substitute(&map).unwrap());
        let prod = (&a * &b).substitute(&map).unwrap();
        prop_assert_eq!(prod, &a.substitute(&map).unwrap() * &b.substitute(&map).unwrap());
    }
}

/// Coefficient of `t` in the univariate polynomial through `(t_k, values_k)`,
/// by Newton divided differences expanded at zero.
fn linear_coefficient(ts: &[BigRational], values: &[BigRational]) -> BigRational {
    let n = ts.len();
    let mut dd = values.to_vec();
    let mut newton = vec![dd[0].clone()];
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&ts[i] - &ts[i - level]);
        }
        newton.push(dd[level].clone());
    }
    // Expand Σ newton_k Π_{j<k} (t − t_j) and read off the t^1 coefficient.
    let mut total = BigRational::zero();
    let mut basis = vec![BigRational::one()];
    for (k, nk) in newton.iter().enumerate() {
        if basis.len() > 1 {
            total += nk * &basis[1];
        }
        let mut next = vec![BigRational::zero(); basis.len() + 1];
        for (i, b) in basis.iter().enumerate() {
            next[i + 1] += b;
            next[i] -= b * &ts[k];
        }
        basis = next;
    }
    total
}

fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, terms: usize) -> Polynomial {
    Polynomial::from_terms(
        nvars,
        (0..terms).map(|_| {
            let e = (0..nvars).map(|_| rng.gen_range(0..3)).collect();
            (Monomial::from_exponents(e), rat(rng.gen_range(-5..6), 1))
        }),
    )
}

#[test]
fn residue_agrees_with_univariate_restriction() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n = 3;
    let mut checked = 0;
    while checked < 50 {
        let a: Vec<BigRational> = (0..n)
            .map(|i| if i == 0 { rat(rng.gen_range(1..4), 1) } else { rat(rng.gen_range(-3..4), 1) })
            .collect();
        let h = Polynomial::from_terms(n, (0..n).map(|i| (Monomial::var(n, i), a[i].clone())));
        let c = rat(rng.gen_range(-4..5), rng.gen_range(1..3));
        let num = random_poly(&mut rng, n, 3);
        let extra = random_poly(&mut rng, n, 2);
        let rest = &extra + &Polynomial::from_int(n, rng.gen_range(1..5));
        let hc = &h - &Polynomial::constant(n, c.clone());
        let full_den = &hc * &rest;
        let r = RatFunc::new(num.clone(), full_den.clone()).unwrap();

        // Point on the hyperplane with random x2.., x1 solved.
        let mut p: Vec<BigRational> = (0..n).map(|_| rat(rng.gen_range(-6..7), rng.gen_range(1..4))).collect();
        let others: BigRational = (1..n).map(|i| &a[i] * &p[i]).sum();
        p[0] = (&c - &others) / &a[0];
        if rest.eval(&p).is_zero() {
            continue;
        }
        // F(t) = full_den(p + t·e1); residue value = a1 · num(p) / F'(0).
        let deg = full_den.degree().unwrap() as i64;
        let ts: Vec<BigRational> = (0..=deg).map(|k| rat(k, 1)).collect();
        let vals: Vec<BigRational> = ts
            .iter()
            .map(|t| {
                let mut q = p.clone();
                q[0] = &q[0] + t;
                full_den.eval(&q)
            })
            .collect();
        let fprime = linear_coefficient(&ts, &vals);
        let oracle = &a[0] * num.eval(&p) / fprime;

        let res = residue_along(&r, &h, &c).unwrap();
        assert_eq!(res.eval(&p).unwrap(), oracle, "residue mismatch for {:?}", r);
        checked += 1;
    }
}
