use std::time::Instant;

use super::expr::{parse_relation, Expr};
use crate::constructors::AlgebraSpec;
use crate::error::{Error, Result};
use crate::report::{Check, Report};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub source: String,
    pub expr: Expr,
}

/// Named relations `lhs = rhs` (or `expr`, meaning `expr = 0`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationSet {
    pub relations: Vec<Relation>,
}

impl RelationSet {
    pub fn parse<I, N, S>(items: I) -> Result<Self>
    where
        I: IntoIterator<Item = (N, S)>,
        N: Into<String>,
        S: Into<String>,
    {
        let relations = items
            .into_iter()
            .map(|(name, src)| {
                let source = src.into();
                Ok(Relation { name: name.into(), expr: parse_relation(&source)?, source })
            })
            .collect::<Result<_>>()?;
        Ok(RelationSet { relations })
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    /// Errors on the first name that is neither a generator nor a variable.
    pub fn check_names(&self, spec: &AlgebraSpec) -> Result<()> {
        for r in &self.relations {
            for name in r.expr.names() {
                if !spec.generators.contains_key(name) && spec.context.vars().index_of(name).is_none() {
                    return Err(Error::Definition(format!("relation {:?} uses unknown name {name:?}", r.name)));
                }
            }
        }
        Ok(())
    }
}

fn e(a: usize, b: usize) -> String {
    format!("E{a}{b}")
}

fn kron(a: usize, b: usize) -> i64 {
    i64::from(a == b)
}

/// `c·x` written as an expression term, omitted when `c = 0`.
fn scaled(c: i64, x: &str) -> String {
    match c {
        0 => "0".into(),
        1 => x.into(),
        -1 => format!("-{x}"),
        _ => format!("{c}*{x}"),
    }
}

/// Chevalley generator relations of `gl_n` and the Serre relations, in the
/// generator names used by the Gelfand–Tsetlin embedding (`n ≤ 9`).
pub fn gl_relations(n: usize) -> Result<RelationSet> {
    if n == 0 || n > 9 {
        return Err(Error::Parameter(format!("gl_{n} relation table is available for 1 ≤ n ≤ 9")));
    }
    let mut rels: Vec<(String, String)> = Vec::new();
    for k in 1..=n {
        for l in k + 1..=n {
            rels.push((format!("[{},{}]", e(k, k), e(l, l)), format!("[{},{}] = 0", e(k, k), e(l, l))));
        }
        for l in 1..n {
            let up = e(l, l + 1);
            let c = kron(k, l) - kron(k, l + 1);
            rels.push((format!("[{},{up}]", e(k, k)), format!("[{},{up}] = {}", e(k, k), scaled(c, &up))));
            let down = e(l + 1, l);
            rels.push((format!("[{},{down}]", e(k, k)), format!("[{},{down}] = {}", e(k, k), scaled(-c, &down))));
        }
    }
    for k in 1..n {
        for l in 1..n {
            let lhs = format!("[{},{}]", e(k, k + 1), e(l + 1, l));
            let rhs = if k == l { format!("{} - {}", e(k, k), e(k + 1, k + 1)) } else { "0".into() };
            rels.push((lhs.clone(), format!("{lhs} = {rhs}")));
        }
    }
    for k in 1..n {
        for l in k + 1..n {
            if l - k >= 2 {
                for (a, b) in [(e(k, k + 1), e(l, l + 1)), (e(k + 1, k), e(l + 1, l))] {
                    rels.push((format!("[{a},{b}]"), format!("[{a},{b}] = 0")));
                }
            }
        }
    }
    for k in 1..n {
        for l in [k.wrapping_sub(1), k + 1] {
            if l == 0 || l >= n {
                continue;
            }
            let (ek, el) = (e(k, k + 1), e(l, l + 1));
            rels.push((format!("serre e{k} e{l}"), format!("[{ek},[{ek},{el}]] = 0")));
            let (fk, fl) = (e(k + 1, k), e(l + 1, l));
            rels.push((format!("serre f{k} f{l}"), format!("[{fk},[{fk},{fl}]] = 0")));
        }
    }
    RelationSet::parse(rels)
}

fn evaluate(spec: &AlgebraSpec, r: &Relation) -> Result<Check> {
    let start = Instant::now();
    let value = r.expr.eval(spec)?;
    Ok(Check::from_bool(r.name.clone(), value.is_zero(), || value.to_text()).timed(start))
}

/// Evaluates every relation exactly; a relation passes iff it evaluates to
/// the zero element.
pub fn verify_relations(spec: &AlgebraSpec, rels: &RelationSet) -> Result<Report> {
    verify_relations_parallel(spec, rels, 1)
}

/// As [`verify_relations`], spreading relations over `jobs` threads. The
/// report order is the relation order regardless of `jobs`.
pub fn verify_relations_parallel(spec: &AlgebraSpec, rels: &RelationSet, jobs: usize) -> Result<Report> {
    rels.check_names(spec)?;
    let jobs = jobs.clamp(1, rels.len().max(1));
    let results: Vec<Result<Check>> = if jobs == 1 {
        rels.relations.iter().map(|r| evaluate(spec, r)).collect()
    } else {
        let mut slots: Vec<Option<Result<Check>>> = (0..rels.len()).map(|_| None).collect();
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..jobs)
                .map(|t| {
                    scope.spawn(move || {
                        (t..rels.len())
                            .step_by(jobs)
                            .map(|i| (i, evaluate(spec, &rels.relations[i])))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for h in handles {
                for (i, r) in h.join().expect("relation worker panicked") {
                    slots[i] = Some(r);
                }
            }
        });
        slots.into_iter().map(|s| s.expect("every relation evaluated")).collect()
    };
    let mut report = Report::new();
    for r in results {
        report.push(r?);
    }
    Ok(report)
}
