use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::actions::MonoidElement;
use crate::error::{Error, Result};
use crate::skewring::SkewElement;

/// Rank and nonzero elementary divisors of an integer row lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeRank {
    pub rank: usize,
    #[serde(serialize_with = "as_strings")]
    pub divisors: Vec<BigInt>,
    /// Dimension of the ambient `Z^m`.
    pub ambient: usize,
}

fn as_strings<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

impl LatticeRank {
    /// Whether the rows generate all of `Z^ambient`.
    pub fn generates_full_lattice(&self) -> bool {
        self.rank == self.ambient && self.divisors.iter().all(One::is_one)
    }
}

/// Nonzero diagonal of the Smith normal form, each dividing the next.
pub fn smith_normal_form(rows: &[Vec<i64>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        // Smallest nonzero entry in the remaining block as pivot.
        let Some((pi, pj)) = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()))
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..m {
            let q = a[i][t].div_floor(&a[t][t]);
            if !q.is_zero() {
                for j in t..n {
                    let v = &a[t][j] * &q;
                    a[i][j] -= v;
                }
            }
            clean &= a[i][t].is_zero();
        }
        for j in t + 1..n {
            let q = a[t][j].div_floor(&a[t][t]);
            if !q.is_zero() {
                for i in t..m {
                    let v = &a[i][t] * &q;
                    a[i][j] -= v;
                }
            }
            clean &= a[t][j].is_zero();
        }
        if !clean {
            continue; // a smaller remainder now exists; pick it as pivot
        }
        // Pivot must divide the rest of the block; otherwise fold a row in.
        if let Some(i) = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&a[i][j] % &a[t][t]).is_zero())) {
            for j in t..n {
                let v = a[i][j].clone();
                a[t][j] += v;
            }
            continue;
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Whether `target` is an integer combination of `rows`: adding it must
/// keep both the rank and the index (product of elementary divisors).
pub fn lattice_contains(rows: &[Vec<i64>], target: &[i64]) -> bool {
    let before = smith_normal_form(rows);
    let mut extended = rows.to_vec();
    extended.push(target.to_vec());
    let after = smith_normal_form(&extended);
    let product = |d: &[BigInt]| d.iter().fold(BigInt::one(), |p, x| p * x);
    before.len() == after.len() && product(&before) == product(&after)
}

/// Stacks the support vectors of all elements and reports the rank and
/// elementary divisors of the lattice they generate.
pub fn support_lattice_rank(elements: &[SkewElement]) -> Result<LatticeRank> {
    let mut rows = Vec::new();
    let mut ambient = None;
    for u in elements {
        let ctx = u.context();
        let m = ctx
            .lattice_rank()
            .ok_or_else(|| Error::UnsupportedMode("support lattices need lattice keys".into()))?;
        if *ambient.get_or_insert(m) != m {
            return Err(Error::ContextMismatch("elements from lattices of different ranks".into()));
        }
        for key in u.support() {
            if let MonoidElement::Lattice(v) = key {
                rows.push(v);
            }
        }
    }
    let divisors = smith_normal_form(&rows);
    Ok(LatticeRank { rank: divisors.len(), divisors, ambient: ambient.unwrap_or(0) })
}
