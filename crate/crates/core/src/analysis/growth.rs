use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use super::linalg::{IntVec, IntegerEchelon};
use crate::actions::MonoidElement;
use crate::arith::{lcm, Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::skewring::SkewElement;

/// Default cap on the span dimension reached by [`growth_profile`].
pub const DEFAULT_DIM_CAP: usize = 20_000;

/// Half-width of the reported slope interval.
pub const SLOPE_TOLERANCE: f64 = 0.2;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthProfile {
    /// `dims[k − 1] = d_V(k)`.
    pub dims: Vec<usize>,
    pub slope: f64,
    pub slope_interval: (f64, f64),
    /// Range of `k` used by the fit.
    pub window: (usize, usize),
}

impl GrowthProfile {
    fn from_dims(dims: Vec<usize>) -> Self {
        let slope = fit_slope(&dims);
        let window = tail_window(dims.len());
        GrowthProfile { dims, slope, slope_interval: (slope - SLOPE_TOLERANCE, slope + SLOPE_TOLERANCE), window }
    }
}

fn tail_window(k_max: usize) -> (usize, usize) {
    (k_max.div_ceil(2).max(1), k_max)
}

/// Least-squares slope of `ln d(k)` against `ln(k + 1)` over
/// `k ∈ [⌈k_max/2⌉, k_max]`, where `dims[k − 1] = d(k)`.
pub fn fit_slope(dims: &[usize]) -> f64 {
    let (lo, hi) = tail_window(dims.len());
    if hi < lo + 1 {
        return 0.0;
    }
    let pts: Vec<(f64, f64)> = (lo..=hi).map(|k| (((k + 1) as f64).ln(), (dims[k - 1] as f64).ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Column index for each `(key, monomial)` pair, assigned on first use.
#[derive(Default)]
struct Columns(BTreeMap<(MonoidElement, Monomial), usize>);

impl Columns {
    fn index(&mut self, key: &MonoidElement, m: &Monomial) -> usize {
        let next = self.0.len();
        *self.0.entry((key.clone(), m.clone())).or_insert(next)
    }
}

/// Integer coordinate vectors of `elements` over `Q`: each key's
/// coefficients are put over the key's common denominator across the set,
/// then each vector is scaled to integers.
fn integer_vectors(elements: &[SkewElement]) -> Vec<IntVec> {
    let mut dens: BTreeMap<&MonoidElement, Polynomial> = BTreeMap::new();
    for u in elements {
        for (k, c) in u.terms() {
            let e = dens.entry(k).or_insert_with(|| Polynomial::one(c.nvars()));
            *e = lcm(e, c.den());
        }
    }
    let mut cols = Columns::default();
    elements
        .iter()
        .map(|u| {
            let mut entries = Vec::new();
            for (k, c) in u.terms() {
                let factor = dens[k].div_exact(c.den()).expect("common denominator is a multiple");
                let p = c.num() * &factor;
                for (m, q) in p.terms() {
                    entries.push((cols.index(k, m), q.clone()));
                }
            }
            let scale = entries.iter().fold(BigInt::one(), |l, (_, q)| l.lcm(q.denom()));
            entries.into_iter().map(|(i, q)| (i, (q * &scale).to_integer())).collect()
        })
        .collect()
}

/// Indices of a maximal `Q`-linearly independent subset, in input order.
fn independent_subset(elements: &[SkewElement]) -> Vec<usize> {
    let mut ech = IntegerEchelon::default();
    integer_vectors(elements)
        .into_iter()
        .enumerate()
        .filter_map(|(i, v)| ech.insert(v).then_some(i))
        .collect()
}

/// `Q`-dimension of the span of the given elements.
pub fn span_dimension(elements: &[SkewElement]) -> usize {
    independent_subset(elements).len()
}

/// `d_V(k) = dim_Q V^k` for `k = 1..k_max`, where `V` is the span of a
/// frame containing 1. Stops with a resource error listing the partial
/// profile once a dimension exceeds `dim_cap`.
pub fn growth_profile(frame: &[SkewElement], k_max: usize, dim_cap: usize) -> Result<GrowthProfile> {
    let Some(first) = frame.first() else {
        return Err(Error::Precondition("empty frame".into()));
    };
    if k_max < 2 {
        return Err(Error::Precondition("growth profiles need k_max ≥ 2".into()));
    }
    let one = SkewElement::one(first.context());
    if !frame.contains(&one) {
        return Err(Error::Precondition("the frame must contain 1".into()));
    }
    let mut basis = vec![one];
    let mut dims = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let mut candidates = Vec::with_capacity(basis.len() * frame.len());
        for b in &basis {
            for f in frame {
                candidates.push(b.checked_mul(f)?);
            }
        }
        let keep = independent_subset(&candidates);
        dims.push(keep.len());
        if keep.len() > dim_cap {
            return Err(Error::Resource(format!(
                "span dimension {} exceeds the cap {dim_cap} at k = {k}; partial dims {dims:?}",
                keep.len()
            )));
        }
        basis = keep.into_iter().map(|i| candidates[i].clone()).collect();
    }
    Ok(GrowthProfile::from_dims(dims))
}

/// `|B_k|` for `k = 1..k_max`, `B_k` the lattice elements that are sums of
/// at most `k` generators.
pub fn monoid_growth(generators: &[MonoidElement], k_max: usize) -> Result<Vec<usize>> {
    let mut gens = Vec::new();
    for g in generators {
        match g {
            MonoidElement::Lattice(v) => gens.push(v.clone()),
            MonoidElement::Group(_) => return Err(Error::UnsupportedMode("ball growth needs lattice keys".into())),
        }
    }
    let Some(dim) = gens.first().map(Vec::len) else {
        return Ok(vec![1; k_max]);
    };
    if gens.iter().any(|g| g.len() != dim) {
        return Err(Error::ContextMismatch("generators of different lengths".into()));
    }
    let mut ball: BTreeSet<Vec<i64>> = BTreeSet::from([vec![0; dim]]);
    let mut frontier = ball.clone();
    let mut sizes = Vec::with_capacity(k_max);
    for _ in 0..k_max {
        let mut next = BTreeSet::new();
        for b in &frontier {
            for g in &gens {
                let s: Vec<i64> = b.iter().zip(g).map(|(x, y)| x + y).collect();
                if !ball.contains(&s) {
                    next.insert(s);
                }
            }
        }
        ball.extend(next.iter().cloned());
        frontier = next;
        sizes.push(ball.len());
    }
    Ok(sizes)
}

/// Growth profile of a ball sequence, for comparison with frame growth.
pub fn ball_profile(sizes: Vec<usize>) -> GrowthProfile {
    GrowthProfile::from_dims(sizes)
}
