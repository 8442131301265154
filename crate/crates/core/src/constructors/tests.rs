use proptest::prelude::*;

use super::*;
use crate::actions::{Automorphism, MonoidElement, Permutation};
use crate::arith::{rat, BigRational, Monomial, Polynomial};

fn var(ctx: &Arc<Context>, i: usize) -> RatFunc {
    RatFunc::var(ctx.nvars(), i)
}

#[test]
fn shift_algebra_examples() {
    let ctx = build_shift_algebra(1, 1).unwrap();
    let e = ctx.unit(0).unwrap();
    assert_eq!(ctx.act(&e, &var(&ctx, 0)).unwrap(), &var(&ctx, 0) - &RatFunc::one(1));

    let ctx = build_shift_algebra(2, 0).unwrap();
    assert_eq!(ctx.lattice_rank(), Some(0));
    let spec = shift_algebra_spec(2, 0).unwrap();
    let (x1, x2) = (spec.generator("x1").unwrap(), spec.generator("x2").unwrap());
    assert!(x1.commutator(x2).unwrap().is_zero());

    let ctx = build_shift_algebra(3, 2).unwrap();
    assert_eq!(ctx.act(&ctx.unit(0).unwrap(), &var(&ctx, 2)).unwrap(), var(&ctx, 2));
    assert_eq!(ctx.act(&ctx.unit(1).unwrap(), &var(&ctx, 1)).unwrap(), &var(&ctx, 1) - &RatFunc::one(3));

    assert!(matches!(build_shift_algebra(1, 2), Err(Error::Parameter(_))));
    assert!(matches!(build_qshift_algebra(1, 2), Err(Error::Parameter(_))));
}

#[test]
fn qshift_algebra_examples() {
    let ctx = build_qshift_algebra(2, 1).unwrap();
    let q = var(&ctx, 2);
    let e = ctx.unit(0).unwrap();
    assert_eq!(ctx.act(&e, &var(&ctx, 0)).unwrap(), &q * &var(&ctx, 0));
    assert_eq!(ctx.act(&e, &var(&ctx, 1)).unwrap(), var(&ctx, 1));
    let e_inv = ctx.inverse(&e).unwrap();
    assert_eq!(ctx.act(&e_inv, &var(&ctx, 0)).unwrap(), var(&ctx, 0).checked_div(&q).unwrap());
    assert_eq!(ctx.act(&e, &q).unwrap(), q);

    let spec = qshift_algebra_spec(2, 1).unwrap();
    let eps = spec.generator("eps1").unwrap();
    let x1 = spec.generator("x1").unwrap();
    let qx1 = SkewElement::from_coeff(&spec.context, &q * &var(&ctx, 0));
    assert_eq!(eps.checked_mul(x1).unwrap(), qx1.checked_mul(eps).unwrap());
}

fn weyl_like() -> GWASpec {
    let sigma = Automorphism::Shift { offsets: vec![rat(-1, 1)] };
    GWASpec::new(&["h"], &[], vec![sigma], vec![RatFunc::var(1, 0)]).unwrap()
}

fn rank_two_shift(a1: RatFunc, a2: RatFunc, o1: BigRational, o2: BigRational) -> Result<GWASpec> {
    let z = BigRational::from_integer(0.into());
    let s1 = Automorphism::Shift { offsets: vec![o1, z.clone()] };
    let s2 = Automorphism::Shift { offsets: vec![z, o2] };
    GWASpec::new(&["x1", "x2"], &[], vec![s1, s2], vec![a1, a2])
}

#[test]
fn weyl_like_gwa() {
    let spec = weyl_like();
    let alg = gwa_embed(&spec).unwrap();
    let (xp, xm) = (alg.generator("X1p").unwrap(), alg.generator("X1m").unwrap());
    let c = xp.commutator(xm).unwrap();
    assert_eq!(c, SkewElement::from_coeff(&alg.context, RatFunc::from_int(1, -1)));
    let report = verify_gwa(&spec).unwrap();
    assert!(report.passed(), "{report}");
    assert_eq!(alg.gamma_generators, vec![RatFunc::var(1, 0)]);
}

#[test]
fn degenerate_gwa() {
    let spec = GWASpec::new(&["h"], &[], vec![Automorphism::identity(1)], vec![RatFunc::one(1)]).unwrap();
    let alg = gwa_embed(&spec).unwrap();
    let (xp, xm) = (alg.generator("X1p").unwrap(), alg.generator("X1m").unwrap());
    let one = SkewElement::one(&alg.context);
    assert_eq!(xp.checked_mul(xm).unwrap(), one);
    assert_eq!(xm.checked_mul(xp).unwrap(), one);
    assert!(verify_gwa(&spec).unwrap().passed());
}

#[test]
fn rank_two_gwa() {
    let (x1, x2) = (RatFunc::var(2, 0), RatFunc::var(2, 1));
    let spec = rank_two_shift(x1.clone(), x2.clone(), rat(-1, 1), rat(-1, 1)).unwrap();
    let report = verify_gwa(&spec).unwrap();
    assert!(report.passed(), "{report}");
    assert!(report.get("[X1p,X2m] = 0").is_some());
    assert!(report.get("[X2p,X1m] = 0").is_some());
    // σ_1 moves x1, so a_2 = x1 violates σ_1(a_2) = a_2.
    assert!(matches!(rank_two_shift(x1.clone(), x1, rat(-1, 1), rat(-1, 1)), Err(Error::Parameter(_))));
}

#[test]
fn witten_woronowicz_gwa() {
    let spec = witten_woronowicz().unwrap();
    let s = RatFunc::var(3, 2);
    let one = RatFunc::one(3);
    // α, β read off the coefficients of a.
    let a = &spec.a()[0];
    let alpha = (&one.checked_div(&(&s * &(&one - &s.pow(2).unwrap()))).unwrap()).scale(&rat(-1, 1));
    let beta = s.checked_div(&(&one - &s.pow(4).unwrap())).unwrap();
    let expected = &(&RatFunc::var(3, 1) + &(&alpha * &RatFunc::var(3, 0))) + &beta;
    assert_eq!(*a, expected);
    let alg = gwa_embed(&spec).unwrap();
    let e = alg.context.unit(0).unwrap();
    assert_eq!(alg.context.act(&e, &RatFunc::var(3, 0)).unwrap(), &s.pow(4).unwrap() * &RatFunc::var(3, 0));
    assert_eq!(alg.context.act(&e, &RatFunc::var(3, 1)).unwrap(), &s.pow(2).unwrap() * &RatFunc::var(3, 1));
    let report = verify_gwa(&spec).unwrap();
    assert!(report.passed(), "{report}");
    assert_eq!(report.checks.len(), 6);
}

#[test]
fn gwa_with_nonpolynomial_a_is_rejected() {
    let a = RatFunc::new(Polynomial::one(1), Polynomial::var(1, 0)).unwrap();
    let sigma = Automorphism::Shift { offsets: vec![rat(-1, 1)] };
    assert!(GWASpec::new(&["h"], &[], vec![sigma.clone()], vec![a]).is_err());
    assert!(GWASpec::new(&["h"], &[], vec![sigma], vec![RatFunc::zero(1)]).is_err());
}

fn small_poly2() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(((0u32..3, 0u32..3), -3i64..4), 1..4).prop_map(|t| {
        Polynomial::from_terms(2, t.into_iter().map(|((a, b), c)| (Monomial::from_exponents(vec![a, b]), rat(c, 1))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_shift_gwas_satisfy_every_relation(
        p in small_poly2(), q in small_poly2(), o1 in -3i64..4, o2 in -3i64..4, d in 1i64..3
    ) {
        prop_assume!(o1 != 0 && o2 != 0);
        // a_1 depends on x1 only, a_2 on x2 only, so the cross conditions hold.
        let a1 = p.substitute(&[Polynomial::var(2, 0), Polynomial::from_int(2, 1)]).unwrap();
        let a2 = q.substitute(&[Polynomial::from_int(2, 1), Polynomial::var(2, 1)]).unwrap();
        prop_assume!(!a1.is_zero() && !a2.is_zero());
        let spec = rank_two_shift(a1.into(), a2.into(), rat(o1, d), rat(o2, 1)).unwrap();
        let report = verify_gwa(&spec).unwrap();
        prop_assert!(report.passed(), "{}", report);
    }
}

fn delta(k: usize, l: usize) -> i64 {
    i64::from(k == l)
}

/// The gl_n table and Serre relations, evaluated directly with commutators.
fn gl_table(spec: &AlgebraSpec, n: usize) -> Vec<(String, SkewElement)> {
    let g = |a: usize, b: usize| spec.generator(&format!("E{a}{b}")).unwrap().clone();
    let mut out = Vec::new();
    let c = |u: &SkewElement, v: &SkewElement| u.commutator(v).unwrap();
    for k in 1..=n {
        for l in 1..=n {
            out.push((format!("[E{k}{k},E{l}{l}]"), c(&g(k, k), &g(l, l))));
        }
        for l in 1..n {
            let up = g(l, l + 1);
            let r = c(&g(k, k), &up) - up.scale(&rat(delta(k, l) - delta(k, l + 1), 1));
            out.push((format!("[E{k}{k},E{l}{}]", l + 1), r));
            let down = g(l + 1, l);
            let r = c(&g(k, k), &down) - down.scale(&rat(delta(k, l + 1) - delta(k, l), 1));
            out.push((format!("[E{k}{k},E{}{l}]", l + 1), r));
        }
    }
    for k in 1..n {
        for l in 1..n {
            let mut r = c(&g(k, k + 1), &g(l + 1, l));
            if k == l {
                r = r - (g(k, k) - g(k + 1, k + 1));
            }
            out.push((format!("[E{k}{},E{}{l}]", k + 1, l + 1), r));
            if k.abs_diff(l) == 1 {
                let (e, f) = (g(k, k + 1), g(k + 1, k));
                out.push((format!("serre e{k} e{l}"), c(&e, &c(&e, &g(l, l + 1)))));
                out.push((format!("serre f{k} f{l}"), c(&f, &c(&f, &g(l + 1, l)))));
            }
            if k.abs_diff(l) >= 2 {
                out.push((format!("[E{k}{},E{l}{}]", k + 1, l + 1), c(&g(k, k + 1), &g(l, l + 1))));
            }
        }
    }
    out
}

#[test]
fn gt_rank_one() {
    let spec = gt_embedding(1).unwrap();
    assert_eq!(spec.context.lattice_rank(), Some(0));
    let e11 = spec.generator("E11").unwrap();
    assert_eq!(*e11, SkewElement::from_coeff(&spec.context, RatFunc::var(1, 0)));
}

#[test]
fn gt_rank_two_relations() {
    let spec = gt_embedding(2).unwrap();
    assert_eq!(spec.context.nvars(), 3);
    assert_eq!(spec.context.lattice_rank(), Some(1));
    // [E12, E21] = E11 − E22 pins c_1 − c_2 = 1.
    let c = spec.generator("E12").unwrap().commutator(spec.generator("E21").unwrap()).unwrap();
    assert_eq!(c, spec.generator("E11").unwrap() - spec.generator("E22").unwrap());
    for (name, r) in gl_table(&spec, 2) {
        assert!(r.is_zero(), "{name}: {}", r.to_text());
    }
    for g in spec.generators.values() {
        assert!(g.is_invariant().unwrap());
    }
    assert_eq!(spec.gamma_generators.len(), 3);
}

#[test]
fn gt_rank_three_relations() {
    let spec = gt_embedding(3).unwrap();
    assert_eq!(spec.context.nvars(), 6);
    assert_eq!(spec.context.group().order(), 12);
    for g in spec.generators.values() {
        assert!(g.is_invariant().unwrap());
    }
    for (name, r) in gl_table(&spec, 3) {
        assert!(r.is_zero(), "{name}: {}", r.to_text());
    }
    for gamma in &spec.gamma_generators {
        let gm = SkewElement::from_coeff(&spec.context, gamma.clone());
        for k in 1..=3 {
            assert!(gm.commutator(spec.generator(&format!("E{k}{k}")).unwrap()).unwrap().is_zero());
        }
    }
}

fn s_key(n: usize, i: usize) -> MonoidElement {
    MonoidElement::Group(Permutation::transposition(n, i, i + 1))
}

#[test]
fn nilhecke_rank_one() {
    let th = demazure_elements(2).unwrap();
    let ctx = th[0].context().clone();
    let inv_alpha = RatFunc::new(Polynomial::one(2), &Polynomial::var(2, 0) - &Polynomial::var(2, 1)).unwrap();
    assert_eq!(th[0].coeff(&s_key(2, 0)), inv_alpha);
    assert_eq!(th[0].coeff(&ctx.identity()), -&inv_alpha);
    assert!(th[0].pow(2).unwrap().is_zero());
}

#[test]
fn nilhecke_relations() {
    for n in [3, 4] {
        let th = demazure_elements(n).unwrap();
        for i in 0..n - 1 {
            assert!(th[i].pow(2).unwrap().is_zero());
            if i + 1 < n - 1 {
                let (a, b) = (&th[i], &th[i + 1]);
                assert_eq!(&(a * b) * a, &(b * a) * b);
            }
            for j in i + 2..n - 1 {
                assert!(th[i].commutator(&th[j]).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn demazure_operator_divides() {
    let th = demazure_elements(2).unwrap();
    let ctx = th[0].context().clone();
    let alpha = RatFunc::from_poly(&Polynomial::var(2, 0) - &Polynomial::var(2, 1));
    let f = RatFunc::from_poly(&Polynomial::var(2, 0).pow(3) + &Polynomial::var(2, 1));
    let fe = SkewElement::from_coeff(&ctx, f.clone());
    let c = th[0].commutator(&fe).unwrap();
    let moved = ctx.act(&s_key(2, 0), &f).unwrap();
    let expected = (&moved - &f).checked_div(&alpha).unwrap();
    assert!(c.coeff(&ctx.identity()).is_zero());
    assert_eq!(c.coeff(&s_key(2, 0)), expected);
    assert!(expected.is_polynomial());
}

#[test]
fn hecke_check_examples() {
    let th = demazure_elements(2).unwrap();
    let ctx = th[0].context().clone();
    let roots = RootData::type_a(2).unwrap();
    let report = hecke_membership_check(&th[0], &roots, &HeckeMode::Degenerate).unwrap();
    assert!(report.passed(), "{report}");

    let inv_alpha = RatFunc::new(Polynomial::one(2), &Polynomial::var(2, 0) - &Polynomial::var(2, 1)).unwrap();
    let broken = SkewElement::term(&ctx, inv_alpha.clone(), s_key(2, 0)).unwrap();
    let report = hecke_membership_check(&broken, &roots, &HeckeMode::Degenerate).unwrap();
    assert!(!report.passed());
    assert!(report.failures().all(|c| c.name.starts_with("cond3")));

    let one = SkewElement::one(&ctx);
    assert!(hecke_membership_check(&one, &roots, &HeckeMode::Degenerate).unwrap().passed());

    let double = SkewElement::term(&ctx, inv_alpha.pow(2).unwrap(), ctx.identity()).unwrap();
    let report = hecke_membership_check(&double, &roots, &HeckeMode::Degenerate).unwrap();
    assert!(report.failures().any(|c| c.name.starts_with("cond1")));

    let stray = SkewElement::term(&ctx, RatFunc::new(Polynomial::one(2), Polynomial::var(2, 0)).unwrap(), ctx.identity()).unwrap();
    let report = hecke_membership_check(&stray, &roots, &HeckeMode::Degenerate).unwrap();
    assert!(report.failures().any(|c| c.name.ends_with("other singularities")));
}

#[test]
fn hecke_q_mode_vanishing() {
    let th = demazure_elements(2).unwrap();
    let ctx = th[0].context().clone();
    let roots = RootData::type_a(2).unwrap();
    let alpha = &Polynomial::var(2, 0) - &Polynomial::var(2, 1);
    // f_s = (α − 2)/α vanishes on α = 2; s⁻¹(α) = −α is negative.
    let num = &alpha - &Polynomial::from_int(2, 2);
    let f = RatFunc::new(num, alpha.clone()).unwrap();
    let u = &SkewElement::term(&ctx, f.clone(), s_key(2, 0)).unwrap() + &SkewElement::term(&ctx, -&f, ctx.identity()).unwrap();
    let report = hecke_membership_check(&u, &roots, &HeckeMode::Q { shift: rat(2, 1) }).unwrap();
    assert!(report.passed(), "{report}");
    let report = hecke_membership_check(&th[0], &roots, &HeckeMode::Q { shift: rat(2, 1) }).unwrap();
    assert!(report.failures().all(|c| c.name.starts_with("cond4")));
    assert!(!report.passed());
}

#[test]
fn demazure_elements_pass_degenerate_check() {
    for n in [3, 4] {
        let roots = RootData::type_a(n).unwrap();
        for t in demazure_elements(n).unwrap() {
            let report = hecke_membership_check(&t, &roots, &HeckeMode::Degenerate).unwrap();
            assert!(report.passed(), "{report}");
        }
    }
    assert!(RootData::type_a(5).is_err());
}
