use std::collections::BTreeMap;

use super::AlgebraSpec;
use crate::actions::{Automorphism, Context, LatticeMode, VarRole, VariableTable};
use crate::arith::{Polynomial, RatFunc};
use crate::error::{Error, Result};
use crate::report::{Check, Report};
use crate::skewring::SkewElement;

/// Data `(D, σ, a)` of a generalized Weyl algebra of rank `len(σ)` over
/// `D = Q(params)[base]`.
#[derive(Clone, Debug)]
pub struct GWASpec {
    vars: VariableTable,
    sigma: Vec<Automorphism>,
    a: Vec<RatFunc>,
}

impl GWASpec {
    /// Validates: σ_i pairwise commute, `σ_i(a_j) = a_j` for `i ≠ j`, each
    /// `a_i` is nonzero with denominator free of base variables.
    pub fn new(base: &[&str], params: &[&str], sigma: Vec<Automorphism>, a: Vec<RatFunc>) -> Result<Self> {
        let entries = base
            .iter()
            .map(|b| (b.to_string(), VarRole::Acted))
            .chain(params.iter().map(|p| (p.to_string(), VarRole::Parameter)))
            .collect();
        let vars = VariableTable::new(entries)?;
        let n = vars.len();
        if sigma.is_empty() || sigma.len() != a.len() {
            return Err(Error::Parameter(format!("{} automorphisms but {} elements a_i", sigma.len(), a.len())));
        }
        if sigma.iter().any(|s| s.nvars() != n) || a.iter().any(|x| x.nvars() != n) {
            return Err(Error::ContextMismatch("GWA data over the wrong variables".into()));
        }
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                return Err(Error::Parameter(format!("a_{} is zero", i + 1)));
            }
            let present = ai.den().vars_present();
            if (0..base.len()).any(|v| present[v]) {
                return Err(Error::Parameter(format!("a_{} is not a polynomial in the base variables", i + 1)));
            }
        }
        for i in 0..sigma.len() {
            for j in 0..sigma.len() {
                if i < j && !sigma[i].commutes_with(&sigma[j])? {
                    return Err(Error::Parameter(format!("σ_{} and σ_{} do not commute", i + 1, j + 1)));
                }
                if i != j && sigma[i].apply(&a[j])? != a[j] {
                    return Err(Error::Parameter(format!("σ_{} does not fix a_{}", i + 1, j + 1)));
                }
            }
        }
        Ok(GWASpec { vars, sigma, a })
    }

    pub fn rank(&self) -> usize {
        self.sigma.len()
    }

    pub fn variables(&self) -> &VariableTable {
        &self.vars
    }

    pub fn sigma(&self) -> &[Automorphism] {
        &self.sigma
    }

    pub fn a(&self) -> &[RatFunc] {
        &self.a
    }

    fn base_indices(&self) -> Vec<usize> {
        self.vars.indices_with(VarRole::Acted)
    }
}

fn plus(i: usize) -> String {
    format!("X{}p", i + 1)
}

fn minus(i: usize) -> String {
    format!("X{}m", i + 1)
}

/// `X_i^+ ↦ 1·σ_i`, `X_i^- ↦ a_i·σ_i⁻¹` in `Frac(D) * ⟨σ⟩`, plus the base
/// variables under their own names.
pub fn gwa_embed(spec: &GWASpec) -> Result<AlgebraSpec> {
    let ctx = Context::builder(spec.vars.clone()).lattice(spec.sigma.clone(), LatticeMode::Group).build()?;
    let mut generators = BTreeMap::new();
    for (i, ai) in spec.a.iter().enumerate() {
        let e = ctx.unit(i)?;
        generators.insert(minus(i), SkewElement::term(&ctx, ai.clone(), ctx.inverse(&e)?)?);
        generators.insert(plus(i), SkewElement::key(&ctx, e)?);
    }
    let mut gamma = Vec::new();
    for v in spec.base_indices() {
        generators.insert(spec.vars.name(v).to_string(), SkewElement::variable(&ctx, spec.vars.name(v))?);
        gamma.push(RatFunc::var(ctx.nvars(), v));
    }
    AlgebraSpec::new(ctx, generators, gamma)
}

fn identity_check(name: String, lhs: &SkewElement, rhs: &SkewElement) -> Result<Check> {
    let diff = lhs.checked_sub(rhs)?;
    Ok(Check::from_bool(name, diff.is_zero(), || diff.to_text()))
}

/// Checks every defining relation of the GWA on the images of
/// [`gwa_embed`], with `d` running over the base variables.
pub fn verify_gwa(spec: &GWASpec) -> Result<Report> {
    let alg = gwa_embed(spec)?;
    let ctx = &alg.context;
    let names = ctx.names();
    let mut report = Report::new();
    for (i, ai) in spec.a.iter().enumerate() {
        let (xp, xm) = (alg.generator(&plus(i))?, alg.generator(&minus(i))?);
        let sigma = &spec.sigma[i];
        let sigma_inv = sigma.inverse();
        report.push(identity_check(
            format!("{}*{} = a{}", minus(i), plus(i), i + 1),
            &xm.checked_mul(xp)?,
            &SkewElement::from_coeff(ctx, ai.clone()),
        )?);
        report.push(identity_check(
            format!("{}*{} = sigma{}(a{})", plus(i), minus(i), i + 1, i + 1),
            &xp.checked_mul(xm)?,
            &SkewElement::from_coeff(ctx, sigma.apply(ai)?),
        )?);
        for v in spec.base_indices() {
            let d = RatFunc::var(ctx.nvars(), v);
            let de = SkewElement::from_coeff(ctx, d.clone());
            let name = &names[v];
            report.push(identity_check(
                format!("{}*{name} = sigma{}({name})*{}", plus(i), i + 1, plus(i)),
                &xp.checked_mul(&de)?,
                &SkewElement::from_coeff(ctx, sigma.apply(&d)?).checked_mul(xp)?,
            )?);
            report.push(identity_check(
                format!("{}*{name} = sigma{}^-1({name})*{}", minus(i), i + 1, minus(i)),
                &xm.checked_mul(&de)?,
                &SkewElement::from_coeff(ctx, sigma_inv.apply(&d)?).checked_mul(xm)?,
            )?);
        }
    }
    for i in 0..spec.rank() {
        for j in 0..spec.rank() {
            if i == j {
                continue;
            }
            let pairs = [(plus(i), plus(j)), (minus(i), minus(j)), (plus(i), minus(j))];
            for (a, b) in pairs {
                if i > j && a.ends_with('p') == b.ends_with('p') {
                    continue; // same-sign commutators are symmetric in (i, j)
                }
                let c = alg.generator(&a)?.commutator(alg.generator(&b)?)?;
                report.push(Check::from_bool(format!("[{a},{b}] = 0"), c.is_zero(), || c.to_text()));
            }
        }
    }
    Ok(report)
}

/// Witten–Woronowicz deformation: `D = Q(s)[H, Z]`, `σ(H) = s⁴H`,
/// `σ(Z) = s²Z`, `a = Z + αH + β` with `α = −1/(s(1−s²))`, `β = s/(1−s⁴)`.
pub fn witten_woronowicz() -> Result<GWASpec> {
    let n = 3;
    let (h, z, s) = (Polynomial::var(n, 0), Polynomial::var(n, 1), Polynomial::var(n, 2));
    let one = Polynomial::one(n);
    let alpha = RatFunc::new(-&one, &s * &(&one - &s.pow(2)))?;
    let beta = RatFunc::new(s.clone(), &one - &s.pow(4))?;
    let a = &(&RatFunc::from_poly(z) + &(&alpha * &RatFunc::from_poly(h))) + &beta;
    let sigma = Automorphism::Scaling { multipliers: vec![vec![0, 0, 4], vec![0, 0, 2], vec![0, 0, 0]] };
    GWASpec::new(&["H", "Z"], &["s"], vec![sigma], vec![a])
}
