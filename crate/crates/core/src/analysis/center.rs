use std::collections::BTreeMap;

use super::linalg::nullspace;
use crate::actions::{Automorphism, KeySpace, VarRole};
use crate::arith::{BigRational, Monomial, Polynomial, RatFunc};
use crate::constructors::AlgebraSpec;
use crate::error::Result;
use crate::skewring::SkewElement;

/// Exponent vectors over `vars` (within `nvars` variables) of total degree
/// at most `d`, in increasing graded-lex order.
fn monomials_up_to(nvars: usize, vars: &[usize], d: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(nvars)];
    let mut layer = out.clone();
    for _ in 0..d {
        let mut next = Vec::new();
        for m in &layer {
            for &v in vars {
                let p = m.mul(&Monomial::var(nvars, v));
                if !next.contains(&p) {
                    next.push(p);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.sort();
    out
}

/// Basis of the polynomials of degree `≤ d` in the non-parameter variables,
/// with coefficients in `Q(parameters)`, fixed by `G` and by every monoid
/// generator. Free coordinates are normalized to 1, so the constant `1` is
/// always the first element.
pub fn center_candidates(spec: &AlgebraSpec, d: u32) -> Result<Vec<RatFunc>> {
    let ctx = &spec.context;
    let n = ctx.nvars();
    let params = ctx.vars().indices_with(VarRole::Parameter);
    let free: Vec<usize> = (0..n).filter(|v| !params.contains(v)).collect();
    let columns = monomials_up_to(n, &free, d);

    let mut maps: Vec<Automorphism> = ctx
        .group()
        .elements()
        .filter(|(_, p)| !p.is_identity())
        .map(|(_, p)| Automorphism::Permutation(p.clone()))
        .collect();
    match ctx.keys() {
        KeySpace::Lattice { generators, .. } => maps.extend(generators.iter().cloned()),
        KeySpace::FiniteGroup(w) => {
            maps.extend(w.elements().filter(|(_, p)| !p.is_identity()).map(|(_, p)| Automorphism::Permutation(p.clone())))
        }
    }

    // Row (map, monomial in the free variables) → coefficients in Q(params).
    let mut rows: BTreeMap<(usize, Monomial), Vec<RatFunc>> = BTreeMap::new();
    for (t, map) in maps.iter().enumerate() {
        for (j, m) in columns.iter().enumerate() {
            let mono = RatFunc::from_poly(Polynomial::monomial(m.clone(), BigRational::from_integer(1.into())));
            let diff = &map.apply(&mono)? - &mono;
            if diff.is_zero() {
                continue;
            }
            let den = RatFunc::from_poly(diff.den().clone());
            let mut split: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
            for (mono, c) in diff.num().terms() {
                let (mut free_part, mut param_part) = (mono.exponents().to_vec(), mono.exponents().to_vec());
                for v in 0..n {
                    if params.contains(&v) {
                        free_part[v] = 0;
                    } else {
                        param_part[v] = 0;
                    }
                }
                let entry = split.entry(Monomial::from_exponents(free_part)).or_insert_with(|| Polynomial::zero(n));
                *entry = &*entry + &Polynomial::monomial(Monomial::from_exponents(param_part), c.clone());
            }
            for (fm, coeff) in split {
                let row = rows.entry((t, fm)).or_insert_with(|| vec![RatFunc::zero(n); columns.len()]);
                row[j] = RatFunc::from_poly(coeff).checked_div(&den)?;
            }
        }
    }
    let basis = nullspace(rows.into_values().collect(), columns.len(), n)?;
    basis
        .into_iter()
        .map(|v| {
            v.iter().zip(&columns).try_fold(RatFunc::zero(n), |acc, (c, m)| {
                let mono = RatFunc::from_poly(Polynomial::monomial(m.clone(), BigRational::from_integer(1.into())));
                acc.checked_add(&c.checked_mul(&mono)?)
            })
        })
        .collect()
}

/// Candidates commuting with every named generator of `spec`.
pub fn commutant_filter(spec: &AlgebraSpec, candidates: &[SkewElement]) -> Result<Vec<SkewElement>> {
    let mut out = Vec::new();
    'next: for c in candidates {
        for g in spec.generators.values() {
            if !c.commutator(g)?.is_zero() {
                continue 'next;
            }
        }
        out.push(c.clone());
    }
    Ok(out)
}
