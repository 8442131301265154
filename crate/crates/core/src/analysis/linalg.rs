//! Exact elimination helpers: rank over `Q`, null spaces over a rational
//! function field, and an incremental fraction-free echelon form over `Z`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{BigRational, RatFunc};
use crate::error::Result;

/// Rank of a rational matrix given by rows.
pub(crate) fn rank_rational(mut rows: Vec<Vec<BigRational>>) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].recip();
        for i in rank + 1..rows.len() {
            if rows[i][col].is_zero() {
                continue;
            }
            let f = &rows[i][col] * &inv;
            for j in col..width {
                let t = &rows[rank][j] * &f;
                rows[i][j] -= t;
            }
        }
        rank += 1;
    }
    rank
}

/// Basis of `{c : Σ_j rows[i][j] c_j = 0 ∀ i}`, one vector per free column,
/// with that column set to 1. Free columns are listed in increasing order.
pub(crate) fn nullspace(mut rows: Vec<Vec<RatFunc>>, ncols: usize, nvars: usize) -> Result<Vec<Vec<RatFunc>>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv()?;
        for j in col..ncols {
            rows[r][j] = rows[r][j].checked_mul(&inv)?;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][col].is_zero() {
                continue;
            }
            let f = rows[i][col].clone();
            for j in col..ncols {
                if !rows[r][j].is_zero() {
                    let t = rows[r][j].checked_mul(&f)?;
                    rows[i][j] = rows[i][j].checked_sub(&t)?;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![RatFunc::zero(nvars); ncols];
        v[free] = RatFunc::one(nvars);
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -&rows[row][free];
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Sparse integer vector.
pub(crate) type IntVec = BTreeMap<usize, BigInt>;

/// Echelon rows over `Z`, keyed by pivot column; reduction is fraction-free
/// with the content divided out after each step.
#[derive(Default)]
pub(crate) struct IntegerEchelon {
    rows: BTreeMap<usize, IntVec>,
}

impl IntegerEchelon {
    /// Reduces `v` against the current rows; inserts it and returns true if
    /// it was independent.
    pub(crate) fn insert(&mut self, mut v: IntVec) -> bool {
        v.retain(|_, x| !x.is_zero());
        loop {
            let Some((&col, lead)) = v.iter().next() else { return false };
            let Some(p) = self.rows.get(&col) else {
                primitive(&mut v);
                self.rows.insert(col, v);
                return true;
            };
            let a = &p[&col];
            let g = a.gcd(lead);
            let (fa, fb) = (a / &g, lead / &g);
            let mut next = IntVec::new();
            for (k, x) in &v {
                next.insert(*k, x * &fa);
            }
            for (k, y) in p {
                let e = next.entry(*k).or_insert_with(BigInt::zero);
                *e -= y * &fb;
            }
            next.retain(|_, x| !x.is_zero());
            primitive(&mut next);
            v = next;
        }
    }
}

fn primitive(v: &mut IntVec) {
    let g = v.values().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && g != BigInt::from(1) {
        for x in v.values_mut() {
            *x = &*x / &g;
        }
    }
    if v.values().next().is_some_and(|x| x.is_negative()) {
        for x in v.values_mut() {
            *x = -&*x;
        }
    }
}
