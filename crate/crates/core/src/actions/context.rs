use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::automorphism::Automorphism;
use super::group::{Group, GroupElement, Permutation, DEFAULT_GROUP_CAP};
use super::vars::{VarRole, VariableTable};
use crate::arith::RatFunc;
use crate::error::{Error, Result};

/// Key of a skew ring term: a lattice vector for `Z^m`/`N^m` monoids, or a
/// permutation when the key space is a finite group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum MonoidElement {
    Lattice(Vec<i64>),
    Group(Permutation),
}

impl MonoidElement {
    pub fn lattice(&self) -> Option<&[i64]> {
        match self {
            MonoidElement::Lattice(v) => Some(v),
            MonoidElement::Group(_) => None,
        }
    }

    pub fn permutation(&self) -> Option<&Permutation> {
        match self {
            MonoidElement::Group(p) => Some(p),
            MonoidElement::Lattice(_) => None,
        }
    }
}

impl fmt::Display for MonoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidElement::Lattice(v) => {
                write!(f, "[")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
            MonoidElement::Group(p) => write!(f, "w{p}"),
        }
    }
}

/// Whether lattice keys form the group `Z^m` or the monoid `N^m`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LatticeMode {
    Group,
    Monoid,
}

#[derive(Clone, Debug)]
pub enum KeySpace {
    /// Abelian lattice monoid generated by commuting shift/scaling maps.
    Lattice { generators: Vec<Automorphism>, mode: LatticeMode, solver: Option<LatticeSolver> },
    /// A finite permutation group used directly as the key space.
    FiniteGroup(Group),
}

/// Recovers a lattice vector from the linear signature of a map.
#[derive(Clone, Debug)]
pub struct LatticeSolver {
    signatures: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
    inverse: Vec<Vec<BigRational>>,
}

impl LatticeSolver {
    fn new(signatures: Vec<Vec<BigRational>>) -> Result<Self> {
        let m = signatures.len();
        let width = signatures.first().map_or(0, Vec::len);
        // Row-reduce a copy of the (m × width) matrix to find m pivot columns.
        let mut rows = signatures.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..width {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][col].recip();
            for i in 0..m {
                if i != r && !rows[i][col].is_zero() {
                    let f = &rows[i][col] * &inv;
                    for j in 0..width {
                        let t = &rows[r][j] * &f;
                        rows[i][j] -= t;
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        if pivots.len() < m {
            return Err(Error::Parameter("lattice generators are not independent".into()));
        }
        // Invert the square submatrix S[:, pivots] (rows = generators).
        let mut a: Vec<Vec<BigRational>> =
            signatures.iter().map(|row| pivots.iter().map(|&c| row[c].clone()).collect()).collect();
        let mut inv: Vec<Vec<BigRational>> = (0..m)
            .map(|i| (0..m).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
            .collect();
        for col in 0..m {
            let p = (col..m).find(|&i| !a[i][col].is_zero()).expect("pivot submatrix is invertible");
            a.swap(col, p);
            inv.swap(col, p);
            let d = a[col][col].recip();
            for j in 0..m {
                a[col][j] = &a[col][j] * &d;
                inv[col][j] = &inv[col][j] * &d;
            }
            for i in 0..m {
                if i != col && !a[i][col].is_zero() {
                    let f = a[i][col].clone();
                    for j in 0..m {
                        let t = &a[col][j] * &f;
                        a[i][j] -= t;
                        let t = &inv[col][j] * &f;
                        inv[i][j] -= t;
                    }
                }
            }
        }
        Ok(LatticeSolver { signatures, pivots, inverse: inv })
    }

    /// Integer `v` with `Σ v_i · signature_i = target`, if one exists.
    fn solve(&self, target: &[BigRational]) -> Option<Vec<i64>> {
        let m = self.signatures.len();
        // v · A = t_p  ⇒  v = t_p · A⁻¹
        let tp: Vec<&BigRational> = self.pivots.iter().map(|&c| &target[c]).collect();
        let mut v = vec![BigRational::zero(); m];
        for (j, vj) in v.iter_mut().enumerate() {
            for (i, t) in tp.iter().enumerate() {
                *vj += *t * &self.inverse[i][j];
            }
        }
        for (k, t) in target.iter().enumerate() {
            let mut s = BigRational::zero();
            for (vi, row) in v.iter().zip(&self.signatures) {
                s += vi * &row[k];
            }
            if &s != t {
                return None;
            }
        }
        v.into_iter()
            .map(|x| if x.is_integer() { i64::try_from(x.to_integer()).ok() } else { None })
            .collect()
    }
}

/// Shared algebra descriptor: variables, acting monoid, finite group `G`.
#[derive(Clone, Debug)]
pub struct Context {
    vars: VariableTable,
    keys: KeySpace,
    group: Group,
}

impl PartialEq for Context {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.group == other.group && self.key_space_eq(other)
    }
}

impl Eq for Context {}

/// Builder for [`Context`].
pub struct ContextBuilder {
    vars: VariableTable,
    keys: Option<KeySpaceSpec>,
    group_generators: Vec<Permutation>,
    group_cap: usize,
}

enum KeySpaceSpec {
    Lattice(Vec<Automorphism>, LatticeMode),
    FiniteGroup(Vec<Permutation>),
}

impl ContextBuilder {
    pub fn lattice(mut self, generators: Vec<Automorphism>, mode: LatticeMode) -> Self {
        self.keys = Some(KeySpaceSpec::Lattice(generators, mode));
        self
    }

    /// Uses the group generated by `generators` as the key space.
    pub fn finite_group_keys(mut self, generators: Vec<Permutation>) -> Self {
        self.keys = Some(KeySpaceSpec::FiniteGroup(generators));
        self
    }

    pub fn group(mut self, generators: Vec<Permutation>) -> Self {
        self.group_generators = generators;
        self
    }

    pub fn group_cap(mut self, cap: usize) -> Self {
        self.group_cap = cap;
        self
    }

    pub fn build(self) -> Result<Arc<Context>> {
        let n = self.vars.len();
        let group = Group::generate(n, &self.group_generators, self.group_cap)?;
        for (_, g) in group.elements() {
            for p in self.vars.indices_with(VarRole::Parameter) {
                if g.apply(p) != p {
                    return Err(Error::Parameter(format!(
                        "group element {g} moves parameter {}",
                        self.vars.name(p)
                    )));
                }
            }
        }
        let keys = match self.keys.unwrap_or(KeySpaceSpec::Lattice(Vec::new(), LatticeMode::Group)) {
            KeySpaceSpec::Lattice(generators, mode) => {
                for g in &generators {
                    if g.nvars() != n {
                        return Err(Error::ContextMismatch("lattice generator over the wrong table".into()));
                    }
                    for i in g.moved_variables()? {
                        if self.vars.role(i) != VarRole::Acted {
                            return Err(Error::Parameter(format!(
                                "lattice generator moves non-acted variable {}",
                                self.vars.name(i)
                            )));
                        }
                    }
                }
                for (i, a) in generators.iter().enumerate() {
                    for b in &generators[i + 1..] {
                        if !a.commutes_with(b)? {
                            return Err(Error::Parameter("lattice generators do not commute".into()));
                        }
                    }
                }
                let signatures: Option<Vec<_>> = generators.iter().map(Automorphism::signature).collect();
                // Dependent generators (e.g. an identity map in a degenerate
                // GWA) are fine as long as nothing needs to be conjugated.
                let solver = match signatures {
                    Some(s) if !s.is_empty() => match LatticeSolver::new(s) {
                        Ok(solver) => Some(solver),
                        Err(e) if !group.is_trivial() => return Err(e),
                        Err(_) => None,
                    },
                    _ => None,
                };
                KeySpace::Lattice { generators, mode, solver }
            }
            KeySpaceSpec::FiniteGroup(gens) => KeySpace::FiniteGroup(Group::generate(n, &gens, self.group_cap)?),
        };
        let ctx = Context { vars: self.vars, keys, group };
        ctx.check_normalizes()?;
        Ok(Arc::new(ctx))
    }
}

impl Context {
    pub fn builder(vars: VariableTable) -> ContextBuilder {
        ContextBuilder { vars, keys: None, group_generators: Vec::new(), group_cap: DEFAULT_GROUP_CAP }
    }

    pub fn vars(&self) -> &VariableTable {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn names(&self) -> &[String] {
        self.vars.names()
    }

    pub fn keys(&self) -> &KeySpace {
        &self.keys
    }

    /// The finite group `G` acting on `L * M` by conjugation.
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn is_lattice(&self) -> bool {
        matches!(self.keys, KeySpace::Lattice { .. })
    }

    pub fn lattice_rank(&self) -> Option<usize> {
        match &self.keys {
            KeySpace::Lattice { generators, .. } => Some(generators.len()),
            KeySpace::FiniteGroup(_) => None,
        }
    }

    pub fn lattice_generators(&self) -> &[Automorphism] {
        match &self.keys {
            KeySpace::Lattice { generators, .. } => generators,
            KeySpace::FiniteGroup(_) => &[],
        }
    }

    pub fn lattice_mode(&self) -> Option<LatticeMode> {
        match &self.keys {
            KeySpace::Lattice { mode, .. } => Some(*mode),
            KeySpace::FiniteGroup(_) => None,
        }
    }

    fn key_space_eq(&self, other: &Context) -> bool {
        match (&self.keys, &other.keys) {
            (KeySpace::Lattice { generators: a, mode: ma, .. }, KeySpace::Lattice { generators: b, mode: mb, .. }) => {
                a == b && ma == mb
            }
            (KeySpace::FiniteGroup(a), KeySpace::FiniteGroup(b)) => a == b,
            _ => false,
        }
    }

    pub fn identity(&self) -> MonoidElement {
        match &self.keys {
            KeySpace::Lattice { generators, .. } => MonoidElement::Lattice(vec![0; generators.len()]),
            KeySpace::FiniteGroup(_) => MonoidElement::Group(Permutation::identity(self.nvars())),
        }
    }

    pub fn is_identity(&self, key: &MonoidElement) -> bool {
        match key {
            MonoidElement::Lattice(v) => v.iter().all(|&x| x == 0),
            MonoidElement::Group(p) => p.is_identity(),
        }
    }

    /// The `i`-th lattice generator as a key.
    pub fn unit(&self, i: usize) -> Result<MonoidElement> {
        let m = self.lattice_rank().ok_or_else(|| Error::UnsupportedMode("unit vectors need lattice keys".into()))?;
        if i >= m {
            return Err(Error::Parameter(format!("lattice generator {i} out of range")));
        }
        let mut v = vec![0; m];
        v[i] = 1;
        Ok(MonoidElement::Lattice(v))
    }

    pub fn validate(&self, key: &MonoidElement) -> Result<()> {
        match (&self.keys, key) {
            (KeySpace::Lattice { generators, mode, .. }, MonoidElement::Lattice(v)) => {
                if v.len() != generators.len() {
                    return Err(Error::ContextMismatch(format!(
                        "lattice vector of length {} in a rank-{} context",
                        v.len(),
                        generators.len()
                    )));
                }
                if *mode == LatticeMode::Monoid && v.iter().any(|&x| x < 0) {
                    return Err(Error::NotInvertible(format!("{key} has negative entries in N^m")));
                }
                Ok(())
            }
            (KeySpace::FiniteGroup(w), MonoidElement::Group(p)) => {
                if w.contains(p) {
                    Ok(())
                } else {
                    Err(Error::ContextMismatch(format!("{p} is not in the key group")))
                }
            }
            _ => Err(Error::ContextMismatch("key kind does not match the context".into())),
        }
    }

    pub fn compose(&self, a: &MonoidElement, b: &MonoidElement) -> Result<MonoidElement> {
        match (a, b) {
            (MonoidElement::Lattice(x), MonoidElement::Lattice(y)) if x.len() == y.len() => {
                Ok(MonoidElement::Lattice(x.iter().zip(y).map(|(p, q)| p + q).collect()))
            }
            (MonoidElement::Group(p), MonoidElement::Group(q)) if p.len() == q.len() => {
                Ok(MonoidElement::Group(p.compose(q)))
            }
            _ => Err(Error::ContextMismatch("keys of different shapes".into())),
        }
    }

    pub fn inverse(&self, a: &MonoidElement) -> Result<MonoidElement> {
        match a {
            MonoidElement::Lattice(v) => {
                if self.lattice_mode() == Some(LatticeMode::Monoid) && v.iter().any(|&x| x != 0) {
                    return Err(Error::NotInvertible(a.to_string()));
                }
                Ok(MonoidElement::Lattice(v.iter().map(|x| -x).collect()))
            }
            MonoidElement::Group(p) => Ok(MonoidElement::Group(p.inverse())),
        }
    }

    /// The automorphism by which a key acts on `L`.
    pub fn action_of(&self, key: &MonoidElement) -> Result<Automorphism> {
        match (&self.keys, key) {
            (KeySpace::Lattice { generators, .. }, MonoidElement::Lattice(v)) => {
                if v.len() != generators.len() {
                    return Err(Error::ContextMismatch("lattice vector length".into()));
                }
                combine_powers(self.nvars(), generators, v)
            }
            (KeySpace::FiniteGroup(_), MonoidElement::Group(p)) => Ok(Automorphism::Permutation(p.clone())),
            _ => Err(Error::ContextMismatch("key kind does not match the context".into())),
        }
    }

    /// `μ(f)`; for a lattice vector `v` this is `ε_1^{v_1} ∘ ... ∘ ε_m^{v_m}`.
    pub fn act(&self, key: &MonoidElement, f: &RatFunc) -> Result<RatFunc> {
        if self.is_identity(key) {
            return Ok(f.clone());
        }
        self.action_of(key)?.apply(f)
    }

    /// `g(f)` for `g ∈ G`.
    pub fn act_group(&self, g: GroupElement, f: &RatFunc) -> Result<RatFunc> {
        let p = self.group.element(g);
        if p.is_identity() {
            return Ok(f.clone());
        }
        Automorphism::Permutation(p.clone()).apply(f)
    }

    /// `g.μ = g μ g⁻¹`, checked symbolically on every variable.
    pub fn conjugate(&self, g: GroupElement, mu: &MonoidElement) -> Result<MonoidElement> {
        let gp = self.group.element(g);
        if gp.is_identity() {
            return Ok(mu.clone());
        }
        let result = match (&self.keys, mu) {
            (KeySpace::FiniteGroup(w), MonoidElement::Group(p)) => {
                let c = gp.compose(p).compose(&gp.inverse());
                if !w.contains(&c) {
                    return Err(Error::NormalizationViolation(format!("{gp} · {p} · {gp}⁻¹")));
                }
                MonoidElement::Group(c)
            }
            (KeySpace::Lattice { mode, solver, .. }, MonoidElement::Lattice(v)) => {
                if v.iter().all(|&x| x == 0) {
                    return Ok(mu.clone());
                }
                let conj = self.action_of(mu)?.conjugate_by(gp);
                let solver = solver
                    .as_ref()
                    .ok_or_else(|| Error::UnsupportedMode("conjugation of general automorphisms".into()))?;
                let sig = conj.signature().expect("shift/scaling conjugates stay linear");
                let w = solver
                    .solve(&sig)
                    .ok_or_else(|| Error::NormalizationViolation(format!("{gp} · {mu} · {gp}⁻¹")))?;
                if *mode == LatticeMode::Monoid && w.iter().any(|&x| x < 0) {
                    return Err(Error::NormalizationViolation(format!("{gp} · {mu} · {gp}⁻¹ leaves N^m")));
                }
                MonoidElement::Lattice(w)
            }
            _ => return Err(Error::ContextMismatch("key kind does not match the context".into())),
        };
        // act(result) = g ∘ μ ∘ g⁻¹ on every variable
        let ga = Automorphism::Permutation(gp.clone());
        let gi = ga.inverse();
        let mu_a = self.action_of(mu)?;
        let res_a = self.action_of(&result)?;
        for i in 0..self.nvars() {
            let x = RatFunc::var(self.nvars(), i);
            if res_a.apply(&x)? != ga.apply(&mu_a.apply(&gi.apply(&x)?)?)? {
                return Err(Error::NormalizationViolation(format!("conjugate of {mu} by {gp} on variable {i}")));
            }
        }
        Ok(result)
    }

    /// The orbit `{g.μ : g ∈ G}`.
    pub fn orbit(&self, mu: &MonoidElement) -> Result<BTreeSet<MonoidElement>> {
        let mut out = BTreeSet::new();
        for (g, _) in self.group.elements() {
            out.insert(self.conjugate(g, mu)?);
        }
        Ok(out)
    }

    /// Elements of `G` fixing `μ`, in enumeration order.
    pub fn stabilizer_elements(&self, mu: &MonoidElement) -> Result<Vec<GroupElement>> {
        let mut out = Vec::new();
        for (g, _) in self.group.elements() {
            if &self.conjugate(g, mu)? == mu {
                out.push(g);
            }
        }
        Ok(out)
    }

    pub fn stabilizer(&self, mu: &MonoidElement) -> Result<Group> {
        Ok(self.group.subgroup(&self.stabilizer_elements(mu)?))
    }

    /// Checks that every generator of `G` conjugates every lattice
    /// generator (or key-group element) into the key space.
    fn check_normalizes(&self) -> Result<()> {
        if self.group.is_trivial() {
            return Ok(());
        }
        let keys: Vec<MonoidElement> = match &self.keys {
            KeySpace::Lattice { generators, .. } => (0..generators.len()).map(|i| self.unit(i)).collect::<Result<_>>()?,
            KeySpace::FiniteGroup(w) => w.elements().map(|(_, p)| MonoidElement::Group(p.clone())).collect(),
        };
        for (g, _) in self.group.elements() {
            for k in &keys {
                self.conjugate(g, k)?;
            }
        }
        Ok(())
    }
}

fn combine_powers(n: usize, generators: &[Automorphism], v: &[i64]) -> Result<Automorphism> {
    let mut offsets: Option<Vec<BigRational>> = None;
    let mut multipliers: Option<Vec<Vec<i64>>> = None;
    let mut others: Vec<Automorphism> = Vec::new();
    for (g, &k) in generators.iter().zip(v) {
        if k == 0 {
            continue;
        }
        match g {
            Automorphism::Shift { offsets: o } => {
                let acc = offsets.get_or_insert_with(|| vec![BigRational::zero(); n]);
                let kr = BigRational::from_integer(BigInt::from(k));
                for (a, b) in acc.iter_mut().zip(o) {
                    *a += b * &kr;
                }
            }
            Automorphism::Scaling { multipliers: m } => {
                let acc = multipliers.get_or_insert_with(|| vec![vec![0; n]; n]);
                for (a, b) in acc.iter_mut().zip(m) {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y * k;
                    }
                }
            }
            other => others.push(other.power(k)?),
        }
    }
    let mut parts: Vec<Automorphism> = Vec::new();
    if let Some(offsets) = offsets {
        parts.push(Automorphism::Shift { offsets });
    }
    if let Some(multipliers) = multipliers {
        parts.push(Automorphism::Scaling { multipliers });
    }
    parts.extend(others);
    match parts.len() {
        0 => Ok(Automorphism::identity(n)),
        1 => Ok(parts.pop().unwrap()),
        _ => {
            // Generators commute, so the order of composition is immaterial.
            let mut images = Vec::with_capacity(n);
            let mut inverse = Vec::with_capacity(n);
            for i in 0..n {
                let mut x = RatFunc::var(n, i);
                let mut y = RatFunc::var(n, i);
                for p in &parts {
                    x = p.apply(&x)?;
                    y = p.inverse().apply(&y)?;
                }
                images.push(x);
                inverse.push(y);
            }
            Ok(Automorphism::General { images, inverse })
        }
    }
}
