use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;
use crate::actions::Permutation;
use crate::arith::{rat, Monomial, Polynomial};
use crate::test_support::{s2_ctx, shift_ctx};

fn lat(v: &[i64]) -> MonoidElement {
    MonoidElement::Lattice(v.to_vec())
}

fn var(ctx: &Arc<Context>, i: usize) -> RatFunc {
    RatFunc::var(ctx.nvars(), i)
}

#[test]
fn shift_moves_past_its_coefficient() {
    let ctx = shift_ctx(1, 1, vec![]);
    let eps = SkewElement::key(&ctx, lat(&[1])).unwrap();
    let x = SkewElement::from_coeff(&ctx, var(&ctx, 0));
    let expected = SkewElement::term(&ctx, &var(&ctx, 0) - &RatFunc::one(1), lat(&[1])).unwrap();
    assert_eq!(&eps * &x, expected);
    assert_eq!(eps.commutator(&x).unwrap(), -&eps);
    let u = &(&x * &eps) + &eps;
    assert_eq!(&SkewElement::one(&ctx) * &u, u);
}

#[test]
fn g_action_examples() {
    let ctx = s2_ctx();
    let g = ctx.group().lookup(&Permutation::transposition(2, 0, 1)).unwrap();
    let u = SkewElement::term(&ctx, var(&ctx, 0), lat(&[1, 0])).unwrap();
    let expected = SkewElement::term(&ctx, var(&ctx, 1), lat(&[0, 1])).unwrap();
    assert_eq!(u.g_action(g).unwrap(), expected);
    assert_eq!(u.g_action(ctx.group().identity()).unwrap(), u);
    let sym = SkewElement::from_coeff(&ctx, &var(&ctx, 0) + &var(&ctx, 1));
    assert_eq!(sym.g_action(g).unwrap(), sym);
}

#[test]
fn orbit_sum_examples() {
    let ctx = s2_ctx();
    let s = orbit_sum(&ctx, &var(&ctx, 0), &lat(&[1, 0])).unwrap();
    let expected = &SkewElement::term(&ctx, var(&ctx, 0), lat(&[1, 0])).unwrap()
        + &SkewElement::term(&ctx, var(&ctx, 1), lat(&[0, 1])).unwrap();
    assert_eq!(s, expected);
    assert!(s.is_invariant().unwrap());
    assert_eq!(s.support(), BTreeSet::from([lat(&[1, 0]), lat(&[0, 1])]));

    let sym = &var(&ctx, 0) + &var(&ctx, 1);
    assert_eq!(orbit_sum(&ctx, &sym, &lat(&[0, 0])).unwrap(), SkewElement::from_coeff(&ctx, sym.clone()));

    let prod = &var(&ctx, 0) * &var(&ctx, 1);
    let s = orbit_sum(&ctx, &prod, &lat(&[1, 0])).unwrap();
    let expected = &SkewElement::term(&ctx, prod.clone(), lat(&[1, 0])).unwrap()
        + &SkewElement::term(&ctx, prod.clone(), lat(&[0, 1])).unwrap();
    assert_eq!(s, expected);

    // x1 is not fixed by the stabilizer of (0,0), which is all of S_2.
    assert!(matches!(orbit_sum(&ctx, &var(&ctx, 0), &lat(&[0, 0])), Err(Error::StabilizerInvariance(_))));
}

#[test]
fn orbit_sum_is_independent_of_coset_representatives() {
    let gens = vec![Permutation::transposition(3, 0, 1), Permutation::transposition(3, 1, 2)];
    let ctx = shift_ctx(3, 3, gens);
    let mu = lat(&[2, 0, 0]);
    // Stabilizer of (2,0,0) swaps x2, x3; a must be symmetric in them.
    let a = &(&var(&ctx, 0) * &var(&ctx, 0)) + &(&var(&ctx, 1) + &var(&ctx, 2));
    let sum = orbit_sum(&ctx, &a, &mu).unwrap();
    // Brute force: Σ over all of G, divided by |G_μ|.
    let mut full = SkewElement::zero(&ctx);
    for (g, _) in ctx.group().elements() {
        let t = SkewElement::term(&ctx, ctx.act_group(g, &a).unwrap(), ctx.conjugate(g, &mu).unwrap()).unwrap();
        full = &full + &t;
    }
    let stab = ctx.stabilizer(&mu).unwrap().order() as i64;
    assert_eq!(full.scale(&rat(1, stab)), sum);
}

#[test]
fn invariance_checks() {
    let ctx = s2_ctx();
    assert!(!SkewElement::from_coeff(&ctx, var(&ctx, 0)).is_invariant().unwrap());
    assert!(SkewElement::zero(&ctx).is_invariant().unwrap());
}

#[test]
fn support_and_kpart() {
    let ctx = shift_ctx(1, 1, vec![]);
    let u = &SkewElement::term(&ctx, var(&ctx, 0), lat(&[1])).unwrap() + &SkewElement::key(&ctx, lat(&[-1])).unwrap();
    assert_eq!(u.support(), BTreeSet::from([lat(&[1]), lat(&[-1])]));
    assert!(SkewElement::zero(&ctx).support().is_empty());

    let ctx2 = shift_ctx(2, 1, vec![]);
    let v = &SkewElement::from_coeff(&ctx2, var(&ctx2, 0)) + &SkewElement::term(&ctx2, var(&ctx2, 1), lat(&[1])).unwrap();
    assert_eq!(v.kpart(), var(&ctx2, 0));
    assert!(SkewElement::key(&ctx2, lat(&[1])).unwrap().kpart().is_zero());
}

#[test]
fn decompose_orbits_examples() {
    let ctx = s2_ctx();
    let a = orbit_sum(&ctx, &var(&ctx, 0), &lat(&[1, 0])).unwrap();
    let b = SkewElement::one(&ctx);
    let u = &a + &b;
    let parts = u.decompose_orbits().unwrap();
    assert_eq!(parts.len(), 2);
    assert_eq!(parts[0].0, lat(&[0, 0]));
    assert_eq!(parts[0].1, b);
    assert_eq!(parts[1].0, lat(&[0, 1]));
    assert_eq!(parts[1].1, a);
    assert_eq!(a.decompose_orbits().unwrap(), vec![(lat(&[0, 1]), a.clone())]);
    assert!(SkewElement::zero(&ctx).decompose_orbits().unwrap().is_empty());
    let bad = SkewElement::from_coeff(&ctx, var(&ctx, 0));
    assert!(matches!(bad.decompose_orbits(), Err(Error::NotInvariant(_))));
}

#[test]
fn canonical_text() {
    let ctx = shift_ctx(1, 1, vec![]);
    let u = &SkewElement::term(&ctx, var(&ctx, 0), lat(&[1])).unwrap()
        + &SkewElement::term(&ctx, RatFunc::from_int(1, -2), lat(&[-1])).unwrap();
    assert_eq!(u.to_text(), "-2 ⊗ [-1] + 1*x1 ⊗ [1]");
}

// ---- randomized properties over S_2-symmetrized two-variable contexts ----

fn arb_poly2() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(((0u32..3, 0u32..3), -3i64..4), 1..4).prop_map(|terms| {
        Polynomial::from_terms(2, terms.into_iter().map(|((a, b), c)| (Monomial::from_exponents(vec![a, b]), rat(c, 1))))
    })
}

fn arb_coeff() -> impl Strategy<Value = RatFunc> {
    (arb_poly2(), prop::bool::ANY, -2i64..3).prop_map(|(p, frac, c)| {
        if frac {
            // p / (x1 − x2 + c) keeps denominators small but non-trivial.
            let den = &(&Polynomial::var(2, 0) - &Polynomial::var(2, 1)) + &Polynomial::from_int(2, c);
            RatFunc::new(p, den).unwrap()
        } else {
            RatFunc::from_poly(p)
        }
    })
}

fn arb_key() -> impl Strategy<Value = MonoidElement> {
    prop::collection::vec(-2i64..3, 2).prop_map(MonoidElement::Lattice)
}

fn arb_elem() -> impl Strategy<Value = Vec<(MonoidElement, RatFunc)>> {
    prop::collection::vec((arb_key(), arb_coeff()), 0..3)
}

fn build(ctx: &Arc<Context>, terms: Vec<(MonoidElement, RatFunc)>) -> SkewElement {
    SkewElement::from_terms(ctx, terms).unwrap()
}

fn symmetrize(ctx: &Arc<Context>, a: &RatFunc) -> RatFunc {
    let mut acc = RatFunc::zero(ctx.nvars());
    for (g, _) in ctx.group().elements() {
        acc = &acc + &ctx.act_group(g, a).unwrap();
    }
    acc
}

/// Makes `a` invariant under the stabilizer of `mu`.
fn stabilizer_average(ctx: &Arc<Context>, a: &RatFunc, mu: &MonoidElement) -> RatFunc {
    let mut acc = RatFunc::zero(ctx.nvars());
    for g in ctx.stabilizer_elements(mu).unwrap() {
        acc = &acc + &ctx.act_group(g, a).unwrap();
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn skew_product_is_associative_and_distributive(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
        let ctx = s2_ctx();
        let (a, b, c) = (build(&ctx, a), build(&ctx, b), build(&ctx, c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }

    #[test]
    fn g_action_is_an_algebra_automorphism(a in arb_elem(), b in arb_elem()) {
        let ctx = s2_ctx();
        let (a, b) = (build(&ctx, a), build(&ctx, b));
        for (g, _) in ctx.group().elements() {
            prop_assert_eq!((&a * &b).g_action(g).unwrap(), &a.g_action(g).unwrap() * &b.g_action(g).unwrap());
        }
    }

    #[test]
    fn support_of_a_product(a in arb_elem(), b in arb_elem()) {
        let ctx = s2_ctx();
        let (a, b) = (build(&ctx, a), build(&ctx, b));
        let allowed: BTreeSet<MonoidElement> = a.support().iter()
            .flat_map(|m| b.support().into_iter().map(move |n| (m.clone(), n)))
            .map(|(m, n)| ctx.compose(&m, &n).unwrap())
            .collect();
        prop_assert!((&a * &b).support().is_subset(&allowed));
    }

    #[test]
    fn orbit_sums_are_invariant_and_decompose(a in arb_coeff(), mu in arb_key(), b in arb_coeff(), nu in arb_key()) {
        let ctx = s2_ctx();
        let a = stabilizer_average(&ctx, &a, &mu);
        let b = stabilizer_average(&ctx, &b, &nu);
        prop_assume!(!a.is_zero() && !b.is_zero());
        let s = orbit_sum(&ctx, &a, &mu).unwrap();
        let t = orbit_sum(&ctx, &b, &nu).unwrap();
        prop_assert!(s.is_invariant().unwrap());
        let u = &s + &t;
        let parts = u.decompose_orbits().unwrap();
        let mut total = SkewElement::zero(&ctx);
        let mut seen = BTreeSet::new();
        for (_, p) in &parts {
            for k in p.support() {
                prop_assert!(seen.insert(k));
            }
            total = &total + p;
        }
        prop_assert_eq!(total, u);
    }

    #[test]
    fn orbit_sums_form_a_k_bimodule(a in arb_coeff(), mu in arb_key(), gamma in arb_coeff()) {
        let ctx = s2_ctx();
        let a = stabilizer_average(&ctx, &a, &mu);
        let gamma = symmetrize(&ctx, &gamma);
        prop_assume!(!a.is_zero() && !gamma.is_zero());
        let g = SkewElement::from_coeff(&ctx, gamma.clone());
        let s = orbit_sum(&ctx, &a, &mu).unwrap();
        prop_assert_eq!(&g * &s, orbit_sum(&ctx, &(&gamma * &a), &mu).unwrap());
        let moved = ctx.act(&mu, &gamma).unwrap();
        prop_assert_eq!(&s * &g, orbit_sum(&ctx, &(&a * &moved), &mu).unwrap());
    }
}
