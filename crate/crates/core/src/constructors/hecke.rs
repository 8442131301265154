use std::collections::BTreeMap;
use std::sync::Arc;

use super::AlgebraSpec;
use crate::actions::{Context, MonoidElement, Permutation, VarRole, VariableTable};
use crate::arith::{pole_order, rat, residue_along, restrict_to_hyperplane, BigRational, Polynomial, RatFunc};
use crate::error::{Error, Result};
use crate::report::{Check, Report};
use crate::skewring::SkewElement;

fn nilhecke_context(n: usize) -> Result<Arc<Context>> {
    if n < 2 {
        return Err(Error::Parameter("nilHecke elements need n ≥ 2".into()));
    }
    let vars = VariableTable::new((1..=n).map(|i| (format!("x{i}"), VarRole::Acted)).collect())?;
    let gens = (0..n - 1).map(|i| Permutation::transposition(n, i, i + 1)).collect();
    Context::builder(vars).finite_group_keys(gens).build()
}

fn thetas(ctx: &Arc<Context>) -> Result<Vec<SkewElement>> {
    let n = ctx.nvars();
    (0..n - 1)
        .map(|i| {
            let alpha = &Polynomial::var(n, i) - &Polynomial::var(n, i + 1);
            let inv = RatFunc::new(Polynomial::one(n), alpha)?;
            SkewElement::from_terms(
                ctx,
                [
                    (MonoidElement::Group(Permutation::transposition(n, i, i + 1)), inv.clone()),
                    (ctx.identity(), -&inv),
                ],
            )
        })
        .collect()
}

/// `θ_i = (x_i − x_{i+1})⁻¹ (s_i − e)` for `i = 1..n−1`, with the key space
/// the symmetric group `S_n` itself.
pub fn demazure_elements(n: usize) -> Result<Vec<SkewElement>> {
    thetas(&nilhecke_context(n)?)
}

/// `theta_i`, `s_i` and `x_i` as named generators; `Γ` is generated by the
/// power sums.
pub fn nilhecke_spec(n: usize) -> Result<AlgebraSpec> {
    let ctx = nilhecke_context(n)?;
    let mut generators = BTreeMap::new();
    for (i, t) in thetas(&ctx)?.into_iter().enumerate() {
        generators.insert(format!("theta{}", i + 1), t);
        let s = MonoidElement::Group(Permutation::transposition(n, i, i + 1));
        generators.insert(format!("s{}", i + 1), SkewElement::key(&ctx, s)?);
    }
    for i in 1..=n {
        let name = format!("x{i}");
        generators.insert(name.clone(), SkewElement::variable(&ctx, &name)?);
    }
    let gamma = (1..=n as u32)
        .map(|s| {
            RatFunc::from_poly(Polynomial::from_terms(
                n,
                (0..n).map(|i| (Polynomial::var_power(n, i, s), rat(1, 1))),
            ))
        })
        .collect();
    AlgebraSpec::new(ctx, generators, gamma)
}

/// Positive roots `x_i − x_j` (`i < j`, variable indices) of type A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootData {
    roots: Vec<(usize, usize)>,
    nvars: usize,
}

/// Largest rank the checker accepts.
const MAX_RANK: usize = 3;

impl RootData {
    /// All positive roots of `A_{n−1}` on `n` variables.
    pub fn type_a(n: usize) -> Result<Self> {
        let roots = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        RootData::new(n, roots)
    }

    pub fn new(nvars: usize, roots: Vec<(usize, usize)>) -> Result<Self> {
        if nvars == 0 || nvars - 1 > MAX_RANK {
            return Err(Error::UnsupportedMode(format!("type A rank {} is above {MAX_RANK}", nvars.saturating_sub(1))));
        }
        if roots.iter().any(|&(i, j)| i >= j || j >= nvars) {
            return Err(Error::Parameter("roots must be x_i − x_j with i < j".into()));
        }
        Ok(RootData { roots, nvars })
    }

    pub fn roots(&self) -> &[(usize, usize)] {
        &self.roots
    }

    fn alpha(&self, (i, j): (usize, usize)) -> Polynomial {
        &Polynomial::var(self.nvars, i) - &Polynomial::var(self.nvars, j)
    }
}

/// Degenerate mode checks the pole and residue conditions along `α = 0`;
/// q mode additionally checks vanishing along `α = shift`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HeckeMode {
    Degenerate,
    Q { shift: BigRational },
}

/// Membership conditions for `Σ_w f_w w` in finite-group key mode:
/// (1) at most simple poles, only along the root hyperplanes;
/// (3) `Res_α f_w + Res_α f_{s_α w} = 0`;
/// (4, q mode) `f_w` vanishes on `α = shift` whenever `w⁻¹(α) < 0`.
pub fn hecke_membership_check(element: &SkewElement, roots: &RootData, mode: &HeckeMode) -> Result<Report> {
    let ctx = element.context();
    let n = ctx.nvars();
    if ctx.is_lattice() {
        return Err(Error::UnsupportedMode("the Hecke check needs group-element keys".into()));
    }
    if n != roots.nvars {
        return Err(Error::ContextMismatch("root data over the wrong variables".into()));
    }
    let names = ctx.names();
    let zero = BigRational::from_integer(0.into());
    let alpha_name = |(i, j): (usize, usize)| format!("{}-{}", names[i], names[j]);
    let mut report = Report::new();

    for (w, f) in element.terms() {
        let mut rest = f.den().clone();
        for &r in roots.roots() {
            let alpha = roots.alpha(r);
            let k = pole_order(f, &alpha, &zero)?;
            report.push(Check::from_bool(format!("cond1 w={w} alpha={}", alpha_name(r)), k <= 1, || {
                format!("pole of order {k}")
            }));
            for _ in 0..k {
                rest = rest.div_exact(&alpha.monic()).expect("pole order counts exact divisions");
            }
        }
        report.push(Check::from_bool(format!("cond1 w={w} other singularities"), rest.is_constant(), || {
            format!("denominator factor {}", rest.to_text(names))
        }));
    }

    for &r in roots.roots() {
        let alpha = roots.alpha(r);
        let s = MonoidElement::Group(Permutation::transposition(n, r.0, r.1));
        let mut seen = std::collections::BTreeSet::new();
        for w in element.terms().keys() {
            let sw = ctx.compose(&s, w)?;
            let pair = if *w <= sw { (w.clone(), sw) } else { (sw, w.clone()) };
            if !seen.insert(pair.clone()) {
                continue;
            }
            let name = format!("cond3 w={} alpha={}", pair.0, alpha_name(r));
            let res = |key: &MonoidElement| residue_along(&element.coeff(key), &alpha, &zero);
            match (res(&pair.0), res(&pair.1)) {
                (Ok(a), Ok(b)) => {
                    let sum = &a + &b;
                    report.push(Check::from_bool(name, sum.is_zero(), || sum.to_text(names)));
                }
                (Err(Error::HigherOrderPole(k)), _) | (_, Err(Error::HigherOrderPole(k))) => {
                    report.push(Check::fail(name, format!("residue undefined: pole of order {k}")));
                }
                (Err(e), _) | (_, Err(e)) => return Err(e),
            }
        }
    }

    if let HeckeMode::Q { shift } = mode {
        for (w, f) in element.terms() {
            let MonoidElement::Group(p) = w else { unreachable!("finite-group keys") };
            let winv = p.inverse();
            for &r in roots.roots() {
                if winv.apply(r.0) < winv.apply(r.1) {
                    continue;
                }
                let alpha = roots.alpha(r);
                let name = format!("cond4 w={w} alpha={}={shift}", alpha_name(r));
                if pole_order(f, &alpha, shift)? > 0 {
                    report.push(Check::fail(name, "pole on the divisor"));
                    continue;
                }
                let restricted = restrict_to_hyperplane(f, &alpha, shift)?;
                report.push(Check::from_bool(name, restricted.is_zero(), || restricted.to_text(names)));
            }
        }
    }
    Ok(report)
}
