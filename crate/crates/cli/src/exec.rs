use std::collections::BTreeMap;
use std::time::Instant;

use galois_core::actions::{Automorphism, MonoidElement, VarRole, VariableTable, DEFAULT_GROUP_CAP};
use galois_core::analysis::{
    algebraically_independent, ball_profile, center_candidates, commutant_filter, gl_relations, growth_profile,
    monoid_growth, ore_witness, parse_coefficient, parse_element, standard_identity, support_lattice_rank,
    verify_relations, GrowthProfile, RelationSet, DEFAULT_DIM_CAP, STANDARD_IDENTITY_CAP,
};
use galois_core::arith::{parse_rational, BigRational, RatFunc};
use galois_core::constructors::{
    gt_embedding, gwa_embed, hecke_membership_check, nilhecke_spec, qshift_algebra_spec, shift_algebra_spec,
    verify_gwa, witten_woronowicz, AlgebraSpec, GWASpec, HeckeMode, RootData,
};
use galois_core::report::{Check, Report};
use galois_core::skewring::SkewElement;
use galois_core::Error;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::report::{JobReport, JobStatus, RunReport, SCHEMA};
use crate::scenario::{AlgebraBlock, ExpectedStatus, Expectation, Job, Op, Scenario, SigmaBlock};

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Worker threads for independent jobs.
    pub jobs: usize,
    /// Largest span dimension a growth profile may reach.
    pub cap_dim: usize,
    /// Largest group order an algebra may require.
    pub cap_group: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { jobs: 1, cap_dim: DEFAULT_DIM_CAP, cap_group: DEFAULT_GROUP_CAP }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("{0}")]
    Io(String),
    #[error("invalid scenario: {0}")]
    Validation(String),
    #[error("resource cap exceeded: {0}")]
    Resource(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Io(_) | RunError::Validation(_) => 2,
            RunError::Resource(_) => 3,
        }
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        match e {
            Error::Resource(m) => RunError::Resource(m),
            other => RunError::Validation(other.to_string()),
        }
    }
}

/// A finished run: the report and the process exit code it implies.
#[derive(Debug)]
pub struct Outcome {
    pub report: RunReport,
    pub exit_code: i32,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

struct Built {
    spec: AlgebraSpec,
    gwa: Option<GWASpec>,
    gl_rank: Option<usize>,
}

fn count(field: &str, s: &str) -> Result<usize, RunError> {
    s.trim().parse().map_err(|_| RunError::Validation(format!("{field} must be a non-negative integer, got {s:?}")))
}

fn integer(field: &str, s: &str) -> Result<i64, RunError> {
    s.trim().parse().map_err(|_| RunError::Validation(format!("{field} must be an integer, got {s:?}")))
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).fold(1u128, |p, k| p.saturating_mul(k))
}

/// Order of the finite groups an algebra block needs, known before building.
fn required_group_order(block: &AlgebraBlock) -> Result<u128, RunError> {
    Ok(match block {
        AlgebraBlock::Gt { n } => (1..=count("n", n)?).fold(1u128, |p, k| p.saturating_mul(factorial(k))),
        AlgebraBlock::Nilhecke { n } => factorial(count("n", n)?),
        _ => 1,
    })
}

fn gwa_spec(
    preset: &Option<String>,
    base: &[String],
    params: &[String],
    sigma: &[SigmaBlock],
    a: &[String],
) -> Result<GWASpec, RunError> {
    match preset.as_deref() {
        Some("witten_woronowicz") => {
            if !(base.is_empty() && params.is_empty() && sigma.is_empty() && a.is_empty()) {
                return Err(RunError::Validation("a preset GWA takes no further fields".into()));
            }
            return Ok(witten_woronowicz()?);
        }
        Some(other) => return Err(RunError::Validation(format!("unknown GWA preset {other:?}"))),
        None => {}
    }
    let entries = base
        .iter()
        .map(|b| (b.clone(), VarRole::Acted))
        .chain(params.iter().map(|p| (p.clone(), VarRole::Parameter)))
        .collect();
    let vars = VariableTable::new(entries)?;
    let n = vars.len();
    let index = |name: &str| {
        vars.index_of(name).ok_or_else(|| RunError::Validation(format!("unknown variable {name:?} in sigma")))
    };
    let mut autos = Vec::new();
    for s in sigma {
        let auto = match (s.shift.is_empty(), s.scale.is_empty()) {
            (false, true) => {
                let mut offsets = vec![BigRational::from_integer(0.into()); n];
                for (v, o) in &s.shift {
                    offsets[index(v)?] = parse_rational(o)?;
                }
                Automorphism::Shift { offsets }
            }
            (true, false) => {
                let mut multipliers = vec![vec![0; n]; n];
                for (v, exps) in &s.scale {
                    let i = index(v)?;
                    for (p, e) in exps {
                        let j = index(p)?;
                        if vars.role(j) != VarRole::Parameter {
                            return Err(RunError::Validation(format!("scaling factor {p:?} is not a parameter")));
                        }
                        multipliers[i][j] = integer("scaling exponent", e)?;
                    }
                }
                Automorphism::Scaling { multipliers }
            }
            (true, true) => Automorphism::identity(n),
            (false, false) => {
                return Err(RunError::Validation("a sigma entry is either a shift or a scaling".into()));
            }
        };
        autos.push(auto);
    }
    let a = a.iter().map(|s| parse_coefficient(s, &vars)).collect::<Result<Vec<_>, _>>()?;
    let base: Vec<&str> = base.iter().map(String::as_str).collect();
    let params: Vec<&str> = params.iter().map(String::as_str).collect();
    Ok(GWASpec::new(&base, &params, autos, a)?)
}

fn build(block: &AlgebraBlock) -> Result<Built, RunError> {
    Ok(match block {
        AlgebraBlock::ShiftAlgebra { n, m } => {
            Built { spec: shift_algebra_spec(count("n", n)?, count("m", m)?)?, gwa: None, gl_rank: None }
        }
        AlgebraBlock::QshiftAlgebra { n, m } => {
            Built { spec: qshift_algebra_spec(count("n", n)?, count("m", m)?)?, gwa: None, gl_rank: None }
        }
        AlgebraBlock::Gwa { preset, base, params, sigma, a } => {
            let g = gwa_spec(preset, base, params, sigma, a)?;
            Built { spec: gwa_embed(&g)?, gwa: Some(g), gl_rank: None }
        }
        AlgebraBlock::Gt { n } => {
            let n = count("n", n)?;
            if n > 9 {
                return Err(RunError::Validation("gt scenarios support n ≤ 9".into()));
            }
            Built { spec: gt_embedding(n)?, gwa: None, gl_rank: Some(n) }
        }
        AlgebraBlock::Nilhecke { n } => Built { spec: nilhecke_spec(count("n", n)?)?, gwa: None, gl_rank: None },
    })
}

/// Result of one operation before the expectation is applied.
#[derive(Default)]
struct Computed {
    report: Report,
    value: Option<Value>,
}

fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Value {
    Value::Array(items.into_iter().map(|x| Value::String(x.to_string())).collect())
}

fn profile_value(p: &GrowthProfile) -> Value {
    json!({
        "dims": strings(&p.dims),
        "slope": format!("{:.6}", p.slope),
        "slope_interval": [format!("{:.6}", p.slope_interval.0), format!("{:.6}", p.slope_interval.1)],
        "window": strings([p.window.0, p.window.1]),
    })
}

fn elements(srcs: &[String], spec: &AlgebraSpec) -> Result<Vec<SkewElement>, RunError> {
    srcs.iter().map(|s| parse_element(s, spec).map_err(RunError::from)).collect()
}

fn coefficient(src: &str, spec: &AlgebraSpec) -> Result<RatFunc, RunError> {
    let u = parse_element(src, spec)?;
    let ctx = u.context();
    match u.terms().iter().collect::<Vec<_>>()[..] {
        [] => Ok(RatFunc::zero(ctx.nvars())),
        [(k, c)] if ctx.is_identity(k) => Ok(c.clone()),
        _ => Err(RunError::Validation(format!("{src:?} is not a rational function"))),
    }
}

fn execute(op: &Op, built: &Built, opts: &RunOptions) -> Result<Computed, RunError> {
    let spec = &built.spec;
    let names = spec.context.names();
    let mut out = Computed::default();
    match op {
        Op::VerifyGwa {} => {
            let g = built.gwa.as_ref().ok_or_else(|| RunError::Validation("verify_gwa needs a gwa algebra".into()))?;
            out.report = verify_gwa(g)?;
        }
        Op::VerifyRelations { table, relations } => {
            let mut rels = match table.as_deref() {
                None => RelationSet::default(),
                Some("gl") => gl_relations(
                    built.gl_rank.ok_or_else(|| RunError::Validation("the gl table needs a gt algebra".into()))?,
                )?,
                Some(t) => return Err(RunError::Validation(format!("unknown relation table {t:?}"))),
            };
            rels.relations.extend(RelationSet::parse(relations.iter().cloned())?.relations);
            if rels.is_empty() {
                return Err(RunError::Validation("no relations to verify".into()));
            }
            out.report = verify_relations(spec, &rels)?;
        }
        Op::CheckInvariance {} => {
            for (name, g) in &spec.generators {
                let ok = g.is_invariant()?;
                out.report.push(Check::from_bool(format!("{name} is G-invariant"), ok, || g.to_text()));
            }
        }
        Op::SupportLatticeRank { generators } => {
            let els: Vec<SkewElement> = match generators {
                Some(list) => list
                    .iter()
                    .map(|n| spec.generator(n).cloned().map_err(RunError::from))
                    .collect::<Result<_, _>>()?,
                None => spec.generators.values().cloned().collect(),
            };
            let r = support_lattice_rank(&els)?;
            out.value = Some(json!({
                "rank": r.rank.to_string(),
                "divisors": strings(&r.divisors),
                "ambient": r.ambient.to_string(),
                "generates_full_lattice": r.generates_full_lattice(),
            }));
        }
        Op::CenterCandidates { degree } => {
            let d = u32::try_from(count("degree", degree)?)
                .map_err(|_| RunError::Validation("degree bound too large".into()))?;
            let basis = center_candidates(spec, d)?;
            out.value = Some(json!({
                "degree_bound": d.to_string(),
                "dimension": basis.len().to_string(),
                "basis": basis.iter().map(|b| b.to_text(names)).collect::<Vec<_>>(),
            }));
        }
        Op::CommutantFilter { candidates, against } => {
            let target = match against {
                None => spec.clone(),
                Some(list) => {
                    let mut gens = BTreeMap::new();
                    for n in list {
                        gens.insert(n.clone(), spec.generator(n)?.clone());
                    }
                    AlgebraSpec::new(spec.context.clone(), gens, Vec::new())?
                }
            };
            let els = elements(candidates, spec)?;
            let kept = commutant_filter(&target, &els)?;
            let retained: Vec<&String> =
                candidates.iter().zip(&els).filter(|(_, e)| kept.contains(e)).map(|(s, _)| s).collect();
            out.value = Some(json!({ "retained": retained }));
        }
        Op::OreWitness { s, u } => {
            let s = coefficient(s, spec)?;
            let u = parse_element(u, spec)?;
            let (u2, r) = ore_witness(&s, &u)?;
            let lhs = u.checked_mul(&SkewElement::from_coeff(&spec.context, r.clone()))?;
            let rhs = SkewElement::from_coeff(&spec.context, s).checked_mul(&u2)?;
            let diff = lhs.checked_sub(&rhs)?;
            out.report.push(Check::from_bool("u*r = s*u'", diff.is_zero(), || diff.to_text()));
            let poly = u2.terms().values().all(RatFunc::is_polynomial) && r.is_polynomial();
            out.report.push(Check::from_bool("r and u' have polynomial coefficients", poly, String::new));
            out.value = Some(json!({ "r": r.to_text(names), "u_prime": u2.to_text() }));
        }
        Op::StandardIdentity { args, cap } => {
            let cap = match cap {
                Some(c) => count("cap", c)?,
                None => STANDARD_IDENTITY_CAP,
            };
            let s = standard_identity(&elements(args, spec)?, cap)?;
            out.value = Some(json!({ "zero": s.is_zero(), "result": s.to_text() }));
        }
        Op::GrowthProfile { frame, k_max } => {
            let p = growth_profile(&elements(frame, spec)?, count("k_max", k_max)?, opts.cap_dim)?;
            out.value = Some(profile_value(&p));
        }
        Op::MonoidGrowth { generators, k_max } => {
            let gens = generators
                .iter()
                .map(|v| {
                    v.iter().map(|x| integer("lattice entry", x)).collect::<Result<Vec<_>, _>>().map(MonoidElement::Lattice)
                })
                .collect::<Result<Vec<_>, _>>()?;
            let sizes = monoid_growth(&gens, count("k_max", k_max)?)?;
            let p = ball_profile(sizes);
            out.value = Some(profile_value(&p));
        }
        Op::HeckeCheck { element, mode, shift } => {
            let u = parse_element(element, spec)?;
            let mode = match (mode.as_deref().unwrap_or("degenerate"), shift) {
                ("degenerate", None) => HeckeMode::Degenerate,
                ("q", Some(s)) => HeckeMode::Q { shift: parse_rational(s)? },
                ("q", None) => return Err(RunError::Validation("q mode needs a shift".into())),
                (m, _) => return Err(RunError::Validation(format!("unknown Hecke mode {m:?}"))),
            };
            out.report = hecke_membership_check(&u, &RootData::type_a(spec.context.nvars())?, &mode)?;
        }
        Op::GammaIndependence { seed } => {
            let seed = u64::try_from(count("seed", seed)?).unwrap_or(0);
            let ok = algebraically_independent(&spec.gamma_generators, spec.context.nvars(), seed)?;
            out.report.push(Check::from_bool("Γ generators algebraically independent", ok, || {
                "Jacobian rank deficit at the sample point".into()
            }));
            out.value = Some(json!({ "count": spec.gamma_generators.len().to_string(), "independent": ok }));
        }
    }
    Ok(out)
}

/// Whether every field of `expected` matches `actual`; the first mismatch
/// is described in the error.
fn matches(expected: &Value, actual: &Value, path: &str) -> Result<(), String> {
    match (expected, actual) {
        (Value::Object(e), Value::Object(a)) => {
            for (k, ev) in e {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                match a.get(k) {
                    Some(av) => matches(ev, av, &p)?,
                    None => return Err(format!("missing field {p}")),
                }
            }
            Ok(())
        }
        _ if expected == actual => Ok(()),
        _ => Err(format!("{}: expected {expected}, got {actual}", if path.is_empty() { "value" } else { path })),
    }
}

fn lookup<'a>(v: &'a Value, field: &str) -> Option<&'a Value> {
    field.split('.').try_fold(v, |cur, k| cur.get(k))
}

fn to_f64(s: &str) -> Result<f64, RunError> {
    let bad = || RunError::Validation(format!("{s:?} is not a number"));
    match s.split_once('/') {
        Some((n, d)) => Ok(n.trim().parse::<f64>().map_err(|_| bad())? / d.trim().parse::<f64>().map_err(|_| bad())?),
        None => s.trim().parse().map_err(|_| bad()),
    }
}

/// Applies the expectation; returns the job status and explanatory notes.
fn judge(exp: &Expectation, c: &Computed) -> Result<(JobStatus, Vec<String>), RunError> {
    let mut notes = Vec::new();
    let mut ok = true;
    let want = exp.status.unwrap_or(ExpectedStatus::Pass);
    let passed = c.report.passed();
    match want {
        ExpectedStatus::Pass if !passed => ok = false,
        ExpectedStatus::Fail if passed => {
            ok = false;
            notes.push("expected at least one failing check".into());
        }
        ExpectedStatus::Fail => notes.push("failing checks were expected".into()),
        _ => {}
    }
    if let Some(ev) = &exp.value {
        let actual = c.value.as_ref().ok_or_else(|| RunError::Validation("this operation has no value".into()))?;
        if let Err(m) = matches(ev, actual, "") {
            ok = false;
            notes.push(m);
        }
    }
    if let Some(iv) = &exp.interval {
        let actual = c.value.as_ref().and_then(|v| lookup(v, &iv.field)).and_then(Value::as_str);
        let x = actual.ok_or_else(|| RunError::Validation(format!("value has no field {:?}", iv.field)))?;
        let (lo, hi, x) = (to_f64(&iv.lo)?, to_f64(&iv.hi)?, to_f64(x)?);
        if !(lo <= x && x <= hi) {
            ok = false;
            notes.push(format!("{} = {x} outside [{lo}, {hi}]", iv.field));
        }
    }
    Ok((if ok { JobStatus::Pass } else { JobStatus::Fail }, notes))
}

fn run_job(job: &Job, op: &Op, built: &Built, opts: &RunOptions) -> (JobReport, Option<RunError>) {
    let start = Instant::now();
    let result = execute(op, built, opts).and_then(|c| judge(&job.expect, &c).map(|j| (c, j)));
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let mut r = JobReport {
        name: job.name.clone(),
        op: job.op.clone(),
        status: JobStatus::Error,
        value: None,
        checks: Vec::new(),
        notes: Vec::new(),
        error: None,
        timing_ms: ms,
    };
    match result {
        Ok((c, (status, notes))) => {
            r.status = status;
            r.value = c.value;
            r.checks = c.report.checks;
            r.notes = notes;
            (r, None)
        }
        Err(e) => {
            r.error = Some(e.to_string());
            (r, Some(e))
        }
    }
}

/// Parses, validates and runs a scenario given as JSON text.
pub fn run_text(text: &str, opts: &RunOptions) -> Result<Outcome, RunError> {
    let start = Instant::now();
    let scenario: Scenario = serde_json::from_str(text).map_err(|e| RunError::Validation(e.to_string()))?;
    let ops = scenario
        .jobs
        .iter()
        .map(|j| j.parse_op().map_err(|e| RunError::Validation(format!("job {:?}: {e}", j.name))))
        .collect::<Result<Vec<_>, _>>()?;
    let mut seen = std::collections::BTreeSet::new();
    for j in &scenario.jobs {
        if !seen.insert(&j.name) {
            return Err(RunError::Validation(format!("duplicate job name {:?}", j.name)));
        }
    }
    let order = required_group_order(&scenario.algebra)?;
    if order > opts.cap_group as u128 {
        return Err(RunError::Resource(format!("group of order {order} exceeds the cap {}", opts.cap_group)));
    }
    let built = build(&scenario.algebra)?;

    let n = scenario.jobs.len();
    let workers = opts.jobs.clamp(1, n.max(1));
    let mut results: Vec<Option<(JobReport, Option<RunError>)>> = (0..n).map(|_| None).collect();
    if workers == 1 {
        for (i, (j, op)) in scenario.jobs.iter().zip(&ops).enumerate() {
            results[i] = Some(run_job(j, op, &built, opts));
        }
    } else {
        let (built, ops, jobs) = (&built, &ops, &scenario.jobs);
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|t| {
                    scope.spawn(move || {
                        (t..n).step_by(workers).map(|i| (i, run_job(&jobs[i], &ops[i], built, opts))).collect::<Vec<_>>()
                    })
                })
                .collect();
            for h in handles {
                for (i, r) in h.join().expect("job worker panicked") {
                    results[i] = Some(r);
                }
            }
        });
    }

    let mut jobs = Vec::with_capacity(n);
    let (mut invalid, mut capped, mut failed) = (false, false, false);
    for (r, err) in results.into_iter().map(|r| r.expect("every job ran")) {
        match err {
            Some(RunError::Resource(_)) => capped = true,
            Some(_) => invalid = true,
            None => failed |= r.status != JobStatus::Pass,
        }
        jobs.push(r);
    }
    let exit_code = if invalid {
        2
    } else if capped {
        3
    } else if failed {
        1
    } else {
        0
    };
    let status = match exit_code {
        0 => JobStatus::Pass,
        1 => JobStatus::Fail,
        _ => JobStatus::Error,
    };
    let report = RunReport {
        schema: SCHEMA.into(),
        engine_version: galois_core::VERSION.into(),
        scenario: scenario.name,
        scenario_sha256: sha256_hex(text.as_bytes()),
        status,
        jobs,
        timing_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok(Outcome { report, exit_code })
}

/// Reads a scenario from a path, or from the shipped suites for `builtin:NAME`.
pub fn load(source: &str) -> Result<String, RunError> {
    match source.strip_prefix("builtin:") {
        Some(name) => crate::builtin::get(name)
            .map(str::to_owned)
            .ok_or_else(|| RunError::Io(format!("no shipped suite named {name:?}"))),
        None => std::fs::read_to_string(source).map_err(|e| RunError::Io(format!("{source}: {e}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::Interval;

    #[test]
    fn subset_matching() {
        let actual = json!({ "rank": "3", "divisors": ["1", "1", "1"], "extra": true });
        assert!(matches(&json!({ "rank": "3" }), &actual, "").is_ok());
        assert_eq!(matches(&json!({ "rank": "2" }), &actual, ""), Err(r#"rank: expected "2", got "3""#.into()));
        assert_eq!(matches(&json!({ "missing": 1 }), &actual, ""), Err("missing field missing".into()));
        assert!(matches(&json!({ "divisors": ["1", "1"] }), &actual, "").is_err());
    }

    #[test]
    fn numbers_in_intervals() {
        assert_eq!(to_f64("1.8").unwrap(), 1.8);
        assert_eq!(to_f64("-3/4").unwrap(), -0.75);
        assert!(to_f64("abc").is_err());

        let computed = Computed { report: Report::new(), value: Some(json!({ "slope": "1.904460" })) };
        let exp = |lo: &str, hi: &str| Expectation {
            interval: Some(Interval { field: "slope".into(), lo: lo.into(), hi: hi.into() }),
            ..Expectation::default()
        };
        assert_eq!(judge(&exp("1.8", "2.2"), &computed).unwrap().0, JobStatus::Pass);
        assert_eq!(judge(&exp("1.95", "2.2"), &computed).unwrap().0, JobStatus::Fail);
    }

    #[test]
    fn expected_failures() {
        let mut report = Report::new();
        report.push(Check::fail("c", "1"));
        let computed = Computed { report, value: None };
        let want_fail = Expectation { status: Some(ExpectedStatus::Fail), ..Expectation::default() };
        assert_eq!(judge(&want_fail, &computed).unwrap().0, JobStatus::Pass);
        assert_eq!(judge(&Expectation::default(), &computed).unwrap().0, JobStatus::Fail);
    }

    #[test]
    fn group_orders() {
        let gt = |n: &str| AlgebraBlock::Gt { n: n.into() };
        assert_eq!(required_group_order(&gt("3")).unwrap(), 12);
        assert_eq!(required_group_order(&gt("4")).unwrap(), 288);
        assert_eq!(required_group_order(&AlgebraBlock::Nilhecke { n: "4".into() }).unwrap(), 24);
        let opts = RunOptions { cap_group: 11, ..RunOptions::default() };
        let text = r#"{"name":"x","algebra":{"kind":"gt","n":"3"},"jobs":[]}"#;
        assert!(matches!(run_text(text, &opts), Err(RunError::Resource(_))));
    }
}
