use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::arith::{rat, Polynomial, RatFunc};
use crate::Error;

/// `n` variables, the first `m` shifted by −1, `G` generated by `group`.
fn shifts(n: usize, m: usize, mode: LatticeMode, group: Vec<Permutation>) -> Arc<Context> {
    let vars = VariableTable::new(
        (0..n)
            .map(|i| (format!("x{}", i + 1), if i < m { VarRole::Acted } else { VarRole::Fixed }))
            .collect(),
    )
    .unwrap();
    let gens = (0..m)
        .map(|i| {
            let mut o = vec![rat(0, 1); n];
            o[i] = rat(-1, 1);
            Automorphism::Shift { offsets: o }
        })
        .collect();
    Context::builder(vars).lattice(gens, mode).group(group).build().unwrap()
}

fn lat(v: &[i64]) -> MonoidElement {
    MonoidElement::Lattice(v.to_vec())
}

#[test]
fn shift_acts_on_acted_variables_only() {
    let ctx = shifts(2, 1, LatticeMode::Group, vec![]);
    let x1 = RatFunc::var(2, 0);
    let x2 = RatFunc::var(2, 1);
    assert_eq!(ctx.act(&lat(&[1]), &x1).unwrap(), &x1 - &RatFunc::one(2));
    assert_eq!(ctx.act(&lat(&[1]), &x2).unwrap(), x2);
}

#[test]
fn qscaling_acts_by_q() {
    let vars = VariableTable::new(vec![("x1".into(), VarRole::Acted), ("q".into(), VarRole::Parameter)]).unwrap();
    let g = Automorphism::Scaling { multipliers: vec![vec![0, 1], vec![0, 0]] };
    let ctx = Context::builder(vars).lattice(vec![g], LatticeMode::Group).build().unwrap();
    let x = RatFunc::var(2, 0);
    let q = RatFunc::var(2, 1);
    assert_eq!(ctx.act(&lat(&[1]), &x).unwrap(), &q * &x);
    assert_eq!(ctx.act(&lat(&[-1]), &x).unwrap(), x.checked_div(&q).unwrap());
    assert_eq!(ctx.act(&lat(&[3]), &q).unwrap(), q);
}

#[test]
fn compose_and_inverse() {
    let ctx = shifts(2, 2, LatticeMode::Group, vec![]);
    assert_eq!(ctx.compose(&lat(&[1, 0]), &lat(&[0, 1])).unwrap(), lat(&[1, 1]));
    assert_eq!(ctx.inverse(&lat(&[2, -1])).unwrap(), lat(&[-2, 1]));
    let monoid = shifts(2, 2, LatticeMode::Monoid, vec![]);
    assert!(matches!(monoid.inverse(&lat(&[1, 0])), Err(Error::NotInvertible(_))));
    assert_eq!(monoid.inverse(&lat(&[0, 0])).unwrap(), lat(&[0, 0]));
}

#[test]
fn conjugation_by_a_swap() {
    let swap = Permutation::transposition(2, 0, 1);
    let ctx = shifts(2, 2, LatticeMode::Group, vec![swap.clone()]);
    let g = ctx.group().lookup(&swap).unwrap();
    assert_eq!(ctx.conjugate(g, &lat(&[1, 0])).unwrap(), lat(&[0, 1]));
    let e = ctx.group().identity();
    assert_eq!(ctx.conjugate(e, &lat(&[5, -3])).unwrap(), lat(&[5, -3]));
}

#[test]
fn conjugation_by_a_permutation_of_fixed_variables() {
    let swap = Permutation::transposition(4, 2, 3);
    let ctx = shifts(4, 2, LatticeMode::Group, vec![swap.clone()]);
    let g = ctx.group().lookup(&swap).unwrap();
    assert_eq!(ctx.conjugate(g, &lat(&[3, -2])).unwrap(), lat(&[3, -2]));
}

#[test]
fn group_must_normalize_the_lattice() {
    // Swapping an acted with a fixed variable does not normalize Z^1.
    let vars = VariableTable::new(vec![("x1".into(), VarRole::Acted), ("x2".into(), VarRole::Fixed)]).unwrap();
    let gens = vec![Automorphism::Shift { offsets: vec![rat(-1, 1), rat(0, 1)] }];
    let r = Context::builder(vars)
        .lattice(gens, LatticeMode::Group)
        .group(vec![Permutation::transposition(2, 0, 1)])
        .build();
    assert!(matches!(r, Err(Error::NormalizationViolation(_))));
}

#[test]
fn orbits_and_stabilizers() {
    let swap = Permutation::transposition(2, 0, 1);
    let ctx = shifts(2, 2, LatticeMode::Group, vec![swap]);
    let orbit = ctx.orbit(&lat(&[1, 0])).unwrap();
    assert_eq!(orbit, BTreeSet::from([lat(&[1, 0]), lat(&[0, 1])]));
    assert_eq!(ctx.stabilizer(&lat(&[1, 0])).unwrap().order(), 1);
    assert_eq!(ctx.orbit(&lat(&[0, 0])).unwrap().len(), 1);
    assert_eq!(ctx.stabilizer(&lat(&[0, 0])).unwrap().order(), 2);
    assert_eq!(ctx.orbit(&lat(&[1, 1])).unwrap(), BTreeSet::from([lat(&[1, 1])]));
    assert_eq!(ctx.stabilizer(&lat(&[1, 1])).unwrap().order(), 2);
}

#[test]
fn finite_group_keys_conjugate_inside_the_group() {
    let vars = VariableTable::new((1..=3).map(|i| (format!("x{i}"), VarRole::Acted)).collect()).unwrap();
    let s1 = Permutation::transposition(3, 0, 1);
    let s2 = Permutation::transposition(3, 1, 2);
    let ctx = Context::builder(vars)
        .finite_group_keys(vec![s1.clone(), s2.clone()])
        .group(vec![s1.clone()])
        .build()
        .unwrap();
    let g = ctx.group().lookup(&s1).unwrap();
    let c = ctx.conjugate(g, &MonoidElement::Group(s2.clone())).unwrap();
    assert_eq!(c, MonoidElement::Group(s1.compose(&s2).compose(&s1)));
}

fn arb_poly3() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..2), -4i64..5), 0..5).prop_map(|terms| {
        Polynomial::from_terms(
            3,
            terms
                .into_iter()
                .map(|((a, b, c), k)| (crate::arith::Monomial::from_exponents(vec![a, b, c]), rat(k, 1))),
        )
    })
}

fn arb_ratfunc3() -> impl Strategy<Value = RatFunc> {
    (arb_poly3(), arb_poly3()).prop_map(|(n, d)| {
        let d = if d.is_zero() { Polynomial::one(3) } else { d };
        RatFunc::new(n, d).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn action_is_a_ring_homomorphism(f in arb_ratfunc3(), g in arb_ratfunc3(), v in prop::collection::vec(-2i64..3, 2)) {
        let ctx = shifts(3, 2, LatticeMode::Group, vec![]);
        let mu = MonoidElement::Lattice(v);
        let sum = ctx.act(&mu, &(&f + &g)).unwrap();
        prop_assert_eq!(sum, &ctx.act(&mu, &f).unwrap() + &ctx.act(&mu, &g).unwrap());
        let prod = ctx.act(&mu, &(&f * &g)).unwrap();
        prop_assert_eq!(prod, &ctx.act(&mu, &f).unwrap() * &ctx.act(&mu, &g).unwrap());
        // the fixed variable x3 is untouched
        let x3 = RatFunc::var(3, 2);
        prop_assert_eq!(ctx.act(&mu, &x3).unwrap(), x3);
    }

    #[test]
    fn action_respects_composition(f in arb_ratfunc3(), a in prop::collection::vec(-2i64..3, 2), b in prop::collection::vec(-2i64..3, 2)) {
        let ctx = shifts(3, 2, LatticeMode::Group, vec![]);
        let (ma, mb) = (MonoidElement::Lattice(a), MonoidElement::Lattice(b));
        let ab = ctx.compose(&ma, &mb).unwrap();
        prop_assert_eq!(ctx.act(&ab, &f).unwrap(), ctx.act(&ma, &ctx.act(&mb, &f).unwrap()).unwrap());
    }

    #[test]
    fn orbit_stabilizer_and_conjugation_homomorphism(v in prop::collection::vec(-2i64..3, 3)) {
        let gens = vec![Permutation::transposition(3, 0, 1), Permutation::transposition(3, 1, 2)];
        let ctx = shifts(3, 3, LatticeMode::Group, gens);
        let mu = MonoidElement::Lattice(v);
        let orbit = ctx.orbit(&mu).unwrap();
        let stab = ctx.stabilizer(&mu).unwrap();
        prop_assert_eq!(orbit.len() * stab.order(), ctx.group().order());
        let group = ctx.group();
        for (g, _) in group.elements() {
            for (h, _) in group.elements() {
                let gh = group.compose(g, h);
                prop_assert_eq!(
                    ctx.conjugate(gh, &mu).unwrap(),
                    ctx.conjugate(g, &ctx.conjugate(h, &mu).unwrap()).unwrap()
                );
            }
        }
    }
}
