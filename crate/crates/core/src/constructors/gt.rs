use std::collections::BTreeMap;

use num_traits::Zero;

use super::AlgebraSpec;
use crate::actions::{Automorphism, Context, LatticeMode, Permutation, VarRole, VariableTable};
use crate::arith::{rat, BigRational, Polynomial, RatFunc};
use crate::error::{Error, Result};
use crate::skewring::SkewElement;

pub fn gt_var_name(k: usize, i: usize) -> String {
    format!("x{k}_{i}")
}

/// Position of `x_{ki}` (1-based `k`, `i`) in the row-major variable list;
/// also the position of `δ_{ki}` among the shifts when `k < n`.
fn index(k: usize, i: usize) -> usize {
    (k - 1) * k / 2 + (i - 1)
}

fn generator_name(a: usize, b: usize, n: usize) -> String {
    if n <= 9 {
        format!("E{a}{b}")
    } else {
        format!("E{a}_{b}")
    }
}

/// Gelfand–Tsetlin realization of `U(gl_n)` inside
/// `Q(x_{ki} : 1 ≤ i ≤ k ≤ n) * Z^{n(n−1)/2}`, with `δ_{ki}(x_{ki}) = x_{ki} − 1`
/// and `G = S_1 × … × S_n` permuting within rows. `E_{kk}` carries the
/// constant `1 − k`. `Γ` is generated by the row power sums.
pub fn gt_embedding(n: usize) -> Result<AlgebraSpec> {
    if n == 0 {
        return Err(Error::Parameter("gl_0 has no generators".into()));
    }
    let nv = n * (n + 1) / 2;
    let shifts = nv - n;
    let mut entries = Vec::with_capacity(nv);
    for k in 1..=n {
        for i in 1..=k {
            entries.push((gt_var_name(k, i), if k < n { VarRole::Acted } else { VarRole::Fixed }));
        }
    }
    let vars = VariableTable::new(entries)?;
    let lattice = (0..shifts)
        .map(|s| {
            let mut offsets = vec![BigRational::zero(); nv];
            offsets[s] = rat(-1, 1);
            Automorphism::Shift { offsets }
        })
        .collect();
    let mut group = Vec::new();
    for k in 2..=n {
        for i in 1..k {
            group.push(Permutation::transposition(nv, index(k, i), index(k, i + 1)));
        }
    }
    let ctx = Context::builder(vars).lattice(lattice, LatticeMode::Group).group(group).build()?;

    let x = |k: usize, i: usize| Polynomial::var(nv, index(k, i));
    let unit = |k: usize, i: usize, sign: i64| {
        let mut v = vec![0; shifts];
        v[index(k, i)] = sign;
        crate::actions::MonoidElement::Lattice(v)
    };
    // Π_{j≠i} (x_{ki} − x_{kj})
    let vandermonde = |k: usize, i: usize| {
        (1..=k).filter(|&j| j != i).fold(Polynomial::one(nv), |acc, j| &acc * &(&x(k, i) - &x(k, j)))
    };
    // Π_j (x_{ki} − x_{rj}) over the whole row r
    let against_row = |k: usize, i: usize, r: usize| {
        (1..=r).fold(Polynomial::one(nv), |acc, j| &acc * &(&x(k, i) - &x(r, j)))
    };

    let mut generators = BTreeMap::new();
    for k in 1..n {
        let mut raise = Vec::new();
        let mut lower = Vec::new();
        for i in 1..=k {
            let den = vandermonde(k, i);
            raise.push((unit(k, i, 1), RatFunc::new(-&against_row(k, i, k + 1), den.clone())?));
            lower.push((unit(k, i, -1), RatFunc::new(against_row(k, i, k - 1), den)?));
        }
        generators.insert(generator_name(k, k + 1, n), SkewElement::from_terms(&ctx, raise)?);
        generators.insert(generator_name(k + 1, k, n), SkewElement::from_terms(&ctx, lower)?);
    }
    for k in 1..=n {
        let mut p = Polynomial::from_int(nv, 1 - k as i64);
        for i in 1..=k {
            p = &p + &x(k, i);
        }
        for i in 1..k {
            p = &p - &x(k - 1, i);
        }
        generators.insert(generator_name(k, k, n), SkewElement::from_coeff(&ctx, RatFunc::from_poly(p)));
    }

    let mut gamma = Vec::new();
    for k in 1..=n {
        for s in 1..=k as u32 {
            let p = Polynomial::from_terms(
                nv,
                (1..=k).map(|i| (Polynomial::var_power(nv, index(k, i), s), rat(1, 1))),
            );
            gamma.push(RatFunc::from_poly(p));
        }
    }
    AlgebraSpec::new(ctx, generators, gamma)
}
