//! Elements `Σ ℓ_μ μ` of the skew monoid ring `L * M`, the conjugation
//! action of `G`, orbit sums and orbit decomposition.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::actions::{Context, GroupElement, MonoidElement};
use crate::arith::{Polynomial, RatFunc};
use crate::error::{Error, Result};

/// Finite sum `Σ ℓ_μ μ` with nonzero rational-function coefficients.
///
/// Multiplication follows `(a·μ)(b·ν) = a·μ(b)·(μν)`.
#[derive(Clone, Debug)]
pub struct SkewElement {
    ctx: Arc<Context>,
    terms: BTreeMap<MonoidElement, RatFunc>,
}

impl PartialEq for SkewElement {
    fn eq(&self, other: &Self) -> bool {
        same_context(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for SkewElement {}

fn same_context(a: &Arc<Context>, b: &Arc<Context>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl SkewElement {
    pub fn zero(ctx: &Arc<Context>) -> Self {
        SkewElement { ctx: Arc::clone(ctx), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Arc<Context>) -> Self {
        Self::from_coeff(ctx, RatFunc::one(ctx.nvars()))
    }

    /// `a · e`.
    pub fn from_coeff(ctx: &Arc<Context>, a: RatFunc) -> Self {
        let mut out = Self::zero(ctx);
        if !a.is_zero() {
            out.terms.insert(ctx.identity(), a);
        }
        out
    }

    /// `a · μ`.
    pub fn term(ctx: &Arc<Context>, a: RatFunc, mu: MonoidElement) -> Result<Self> {
        ctx.validate(&mu)?;
        if a.nvars() != ctx.nvars() {
            return Err(Error::ContextMismatch("coefficient over the wrong variable table".into()));
        }
        let mut out = Self::zero(ctx);
        if !a.is_zero() {
            out.terms.insert(mu, a);
        }
        Ok(out)
    }

    /// `1 · μ`.
    pub fn key(ctx: &Arc<Context>, mu: MonoidElement) -> Result<Self> {
        Self::term(ctx, RatFunc::one(ctx.nvars()), mu)
    }

    /// The variable `name` as `x · e`.
    pub fn variable(ctx: &Arc<Context>, name: &str) -> Result<Self> {
        let i = ctx.vars().index_of(name).ok_or_else(|| Error::Definition(name.to_string()))?;
        Ok(Self::from_coeff(ctx, RatFunc::var(ctx.nvars(), i)))
    }

    pub fn from_terms<I>(ctx: &Arc<Context>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MonoidElement, RatFunc)>,
    {
        let mut out = Self::zero(ctx);
        for (mu, a) in terms {
            out = out.checked_add(&Self::term(ctx, a, mu)?)?;
        }
        Ok(out)
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<MonoidElement, RatFunc> {
        &self.terms
    }

    pub fn coeff(&self, mu: &MonoidElement) -> RatFunc {
        self.terms.get(mu).cloned().unwrap_or_else(|| RatFunc::zero(self.ctx.nvars()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn check_same(&self, other: &SkewElement) -> Result<()> {
        if same_context(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch("skew elements from different contexts".into()))
        }
    }

    pub fn checked_add(&self, other: &SkewElement) -> Result<SkewElement> {
        self.check_same(other)?;
        let mut terms = self.terms.clone();
        for (mu, b) in &other.terms {
            accumulate(&mut terms, mu.clone(), b.clone());
        }
        Ok(SkewElement { ctx: Arc::clone(&self.ctx), terms })
    }

    pub fn checked_sub(&self, other: &SkewElement) -> Result<SkewElement> {
        self.checked_add(&-other)
    }

    /// Skew product, bilinear extension of `(aμ)(bν) = a·μ(b)·(μν)`.
    pub fn checked_mul(&self, other: &SkewElement) -> Result<SkewElement> {
        self.check_same(other)?;
        let mut buckets: BTreeMap<MonoidElement, Vec<RatFunc>> = BTreeMap::new();
        for (mu, a) in &self.terms {
            let action = if self.ctx.is_identity(mu) { None } else { Some(self.ctx.action_of(mu)?) };
            for (nu, b) in &other.terms {
                let moved = match &action {
                    None => b.clone(),
                    Some(act) => act.apply(b)?,
                };
                let key = self.ctx.compose(mu, nu)?;
                buckets.entry(key).or_default().push(a.checked_mul(&moved)?);
            }
        }
        let mut terms = BTreeMap::new();
        for (key, parts) in buckets {
            let sum = sum_ratfuncs(self.ctx.nvars(), parts)?;
            if !sum.is_zero() {
                terms.insert(key, sum);
            }
        }
        Ok(SkewElement { ctx: Arc::clone(&self.ctx), terms })
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &SkewElement) -> Result<SkewElement> {
        self.checked_mul(other)?.checked_sub(&other.checked_mul(self)?)
    }

    pub fn pow(&self, k: u32) -> Result<SkewElement> {
        let mut acc = SkewElement::one(&self.ctx);
        for _ in 0..k {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Left multiplication of every coefficient by `c`.
    pub fn scale_left(&self, c: &RatFunc) -> Result<SkewElement> {
        if c.is_zero() {
            return Ok(SkewElement::zero(&self.ctx));
        }
        let mut terms = BTreeMap::new();
        for (mu, a) in &self.terms {
            terms.insert(mu.clone(), c.checked_mul(a)?);
        }
        Ok(SkewElement { ctx: Arc::clone(&self.ctx), terms })
    }

    pub fn scale(&self, c: &BigRational) -> SkewElement {
        if num_traits::Zero::is_zero(c) {
            return SkewElement::zero(&self.ctx);
        }
        SkewElement {
            ctx: Arc::clone(&self.ctx),
            terms: self.terms.iter().map(|(mu, a)| (mu.clone(), a.scale(c))).collect(),
        }
    }

    /// `(a μ)^g = g(a) · g.μ`, extended additively.
    pub fn g_action(&self, g: GroupElement) -> Result<SkewElement> {
        if self.ctx.group().element(g).is_identity() {
            return Ok(self.clone());
        }
        let mut terms = BTreeMap::new();
        for (mu, a) in &self.terms {
            let key = self.ctx.conjugate(g, mu)?;
            accumulate(&mut terms, key, self.ctx.act_group(g, a)?);
        }
        Ok(SkewElement { ctx: Arc::clone(&self.ctx), terms })
    }

    /// Whether `u^g = u` for every `g ∈ G`.
    pub fn is_invariant(&self) -> Result<bool> {
        for (g, p) in self.ctx.group().elements() {
            if p.is_identity() {
                continue;
            }
            if &self.g_action(g)? != self {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn support(&self) -> BTreeSet<MonoidElement> {
        self.terms.keys().cloned().collect()
    }

    /// Coefficient of the identity key.
    pub fn kpart(&self) -> RatFunc {
        self.coeff(&self.ctx.identity())
    }

    /// Splits a `G`-invariant element into components supported on single
    /// orbits, keyed by the lexicographically least orbit element.
    pub fn decompose_orbits(&self) -> Result<Vec<(MonoidElement, SkewElement)>> {
        if !self.is_invariant()? {
            return Err(Error::NotInvariant("decompose_orbits needs a G-invariant element".into()));
        }
        let mut components: BTreeMap<MonoidElement, BTreeMap<MonoidElement, RatFunc>> = BTreeMap::new();
        for (mu, a) in &self.terms {
            let orbit = self.ctx.orbit(mu)?;
            let rep = orbit.into_iter().next().expect("orbit contains mu");
            components.entry(rep).or_default().insert(mu.clone(), a.clone());
        }
        Ok(components
            .into_iter()
            .map(|(rep, terms)| (rep, SkewElement { ctx: Arc::clone(&self.ctx), terms }))
            .collect())
    }

    /// Canonical text: `coeff ⊗ key` per term, sorted by key.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let names = self.ctx.names();
        self.terms
            .iter()
            .map(|(mu, a)| format!("{} ⊗ {}", paren(&a.to_text(names)), mu))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn paren(s: &str) -> String {
    if s.contains(" + ") && !s.starts_with('(') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

fn accumulate(terms: &mut BTreeMap<MonoidElement, RatFunc>, key: MonoidElement, value: RatFunc) {
    use std::collections::btree_map::Entry;
    if value.is_zero() {
        return;
    }
    match terms.entry(key) {
        Entry::Vacant(v) => {
            v.insert(value);
        }
        Entry::Occupied(mut o) => {
            let sum = o.get() + &value;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

/// Sums coefficients, adding polynomial parts first and grouping equal
/// denominators so that fewer GCDs are needed.
fn sum_ratfuncs(nvars: usize, parts: Vec<RatFunc>) -> Result<RatFunc> {
    if parts.len() == 1 {
        return Ok(parts.into_iter().next().unwrap());
    }
    let mut groups: Vec<(Polynomial, Polynomial)> = Vec::new();
    for r in parts {
        let (num, den) = r.into_parts();
        match groups.iter_mut().find(|(_, d)| *d == den) {
            Some(entry) => entry.0 = &entry.0 + &num,
            None => groups.push((num, den)),
        }
    }
    let mut acc = RatFunc::zero(nvars);
    for (num, den) in groups {
        if num.is_zero() {
            continue;
        }
        acc = acc.checked_add(&RatFunc::new(num, den)?)?;
    }
    Ok(acc)
}

/// `[aμ] = Σ_{g ∈ G/G_μ} g(a) · g.μ`. Requires `a ≠ 0` fixed by the
/// stabilizer `G_μ`; coset representatives are the first group element in
/// enumeration order for each conjugate of `μ`.
pub fn orbit_sum(ctx: &Arc<Context>, a: &RatFunc, mu: &MonoidElement) -> Result<SkewElement> {
    if a.is_zero() {
        return Err(Error::Precondition("orbit sum of a zero coefficient".into()));
    }
    ctx.validate(mu)?;
    for g in ctx.stabilizer_elements(mu)? {
        if &ctx.act_group(g, a)? != a {
            return Err(Error::StabilizerInvariance(mu.to_string()));
        }
    }
    let mut reps: BTreeMap<MonoidElement, GroupElement> = BTreeMap::new();
    for (g, _) in ctx.group().elements() {
        reps.entry(ctx.conjugate(g, mu)?).or_insert(g);
    }
    let mut terms = BTreeMap::new();
    for (key, g) in reps {
        terms.insert(key, ctx.act_group(g, a)?);
    }
    Ok(SkewElement { ctx: Arc::clone(ctx), terms })
}

impl fmt::Display for SkewElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Serialize for SkewElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Term<'a>(&'a MonoidElement, String);
        impl Serialize for Term<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                let mut m = serializer.serialize_map(Some(2))?;
                m.serialize_entry("key", &self.0.to_string())?;
                m.serialize_entry("coeff", &self.1)?;
                m.end()
            }
        }
        let names = self.ctx.names();
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (mu, a) in &self.terms {
            seq.serialize_element(&Term(mu, a.to_text(names)))?;
        }
        seq.end()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&SkewElement> for &SkewElement {
            type Output = SkewElement;
            fn $method(self, rhs: &SkewElement) -> SkewElement {
                self.$checked(rhs).expect("skew elements from different contexts")
            }
        }
        impl $tr<SkewElement> for SkewElement {
            type Output = SkewElement;
            fn $method(self, rhs: SkewElement) -> SkewElement {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &SkewElement {
    type Output = SkewElement;
    fn neg(self) -> SkewElement {
        SkewElement {
            ctx: Arc::clone(&self.ctx),
            terms: self.terms.iter().map(|(mu, a)| (mu.clone(), -a)).collect(),
        }
    }
}

impl Neg for SkewElement {
    type Output = SkewElement;
    fn neg(self) -> SkewElement {
        -&self
    }
}

#[cfg(test)]
mod tests;
