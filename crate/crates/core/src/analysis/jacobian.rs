use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::linalg::rank_rational;
use crate::arith::{rat, BigRational, RatFunc};
use crate::error::{Error, Result};

/// Rank of the Jacobian matrix `(∂p_i/∂x_j)(point)` of polynomials.
pub fn jacobian_rank(polys: &[RatFunc], point: &[BigRational]) -> Result<usize> {
    let rows = polys
        .iter()
        .map(|p| {
            let p = p.as_polynomial().ok_or_else(|| Error::Precondition("Jacobian of a non-polynomial".into()))?;
            if p.nvars() != point.len() {
                return Err(Error::ContextMismatch("evaluation point has the wrong length".into()));
            }
            Ok((0..point.len()).map(|j| p.derivative(j).eval(point)).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(rank_rational(rows))
}

/// Reproducible rational point with small numerators and denominators.
pub fn random_point(nvars: usize, seed: u64) -> Vec<BigRational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..nvars).map(|_| rat(rng.gen_range(-50..=50), rng.gen_range(1..=7))).collect()
}

/// Full Jacobian rank at a random point certifies algebraic independence
/// (a rank deficit there is only evidence of dependence).
pub fn algebraically_independent(polys: &[RatFunc], nvars: usize, seed: u64) -> Result<bool> {
    Ok(jacobian_rank(polys, &random_point(nvars, seed))? == polys.len())
}
