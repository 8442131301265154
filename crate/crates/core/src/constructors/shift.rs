use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use super::AlgebraSpec;
use crate::actions::{Automorphism, Context, LatticeMode, VarRole, VariableTable};
use crate::arith::{rat, BigRational, RatFunc};
use crate::error::{Error, Result};
use crate::skewring::SkewElement;

fn shift_vars(n: usize, m: usize, extra: &[&str]) -> Result<VariableTable> {
    if m > n {
        return Err(Error::Parameter(format!("{m} shifted variables requested out of {n}")));
    }
    let mut entries: Vec<(String, VarRole)> = (0..n)
        .map(|i| (format!("x{}", i + 1), if i < m { VarRole::Acted } else { VarRole::Fixed }))
        .collect();
    entries.extend(extra.iter().map(|p| (p.to_string(), VarRole::Parameter)));
    VariableTable::new(entries)
}

/// `Q(x_1..x_n) * Z^m` with `ε_i(x_j) = x_j − δ_ij`.
pub fn build_shift_algebra(n: usize, m: usize) -> Result<Arc<Context>> {
    let vars = shift_vars(n, m, &[])?;
    let gens = (0..m)
        .map(|i| {
            let mut offsets = vec![BigRational::zero(); n];
            offsets[i] = rat(-1, 1);
            Automorphism::Shift { offsets }
        })
        .collect();
    Context::builder(vars).lattice(gens, LatticeMode::Group).build()
}

/// `Q(q)(x_1..x_n) * Z^m` with `ε_i(x_j) = q^{δ_ij} x_j`; `q` is the last
/// variable, a symbolic parameter.
pub fn build_qshift_algebra(n: usize, m: usize) -> Result<Arc<Context>> {
    let vars = shift_vars(n, m, &["q"])?;
    let gens = (0..m)
        .map(|i| {
            let mut multipliers = vec![vec![0; n + 1]; n + 1];
            multipliers[i][n] = 1;
            Automorphism::Scaling { multipliers }
        })
        .collect();
    Context::builder(vars).lattice(gens, LatticeMode::Group).build()
}

/// Generators `x_j`, `eps_i`, `eps_i_inv`; `Γ` is generated by all `x_j`.
fn spec_from(ctx: Arc<Context>, n: usize, m: usize) -> Result<AlgebraSpec> {
    let mut generators = BTreeMap::new();
    for j in 0..n {
        let name = format!("x{}", j + 1);
        generators.insert(name.clone(), SkewElement::variable(&ctx, &name)?);
    }
    for i in 0..m {
        let e = ctx.unit(i)?;
        generators.insert(format!("eps{}_inv", i + 1), SkewElement::key(&ctx, ctx.inverse(&e)?)?);
        generators.insert(format!("eps{}", i + 1), SkewElement::key(&ctx, e)?);
    }
    let gamma = (0..n).map(|j| RatFunc::var(ctx.nvars(), j)).collect();
    AlgebraSpec::new(ctx, generators, gamma)
}

pub fn shift_algebra_spec(n: usize, m: usize) -> Result<AlgebraSpec> {
    spec_from(build_shift_algebra(n, m)?, n, m)
}

pub fn qshift_algebra_spec(n: usize, m: usize) -> Result<AlgebraSpec> {
    spec_from(build_qshift_algebra(n, m)?, n, m)
}
