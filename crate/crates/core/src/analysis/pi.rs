use crate::error::{Error, Result};
use crate::skewring::SkewElement;

/// Default largest `N` accepted by [`standard_identity`].
pub const STANDARD_IDENTITY_CAP: usize = 6;

/// `s_N(a_1..a_N) = Σ_{σ ∈ S_N} sgn(σ) a_{σ(1)}···a_{σ(N)}`.
pub fn standard_identity(elements: &[SkewElement], cap: usize) -> Result<SkewElement> {
    let n = elements.len();
    if n > cap {
        return Err(Error::Resource(format!("standard identity of degree {n} exceeds the cap {cap}")));
    }
    let Some(first) = elements.first() else {
        return Err(Error::Precondition("standard identity needs at least one argument".into()));
    };
    let ctx = first.context();
    let mut total = SkewElement::zero(ctx);
    let mut used = vec![false; n];
    extend(elements, &mut used, SkewElement::one(ctx), false, &mut total)?;
    Ok(total)
}

/// Appends each unused argument to the prefix product; choosing the `k`-th
/// unused index adds `k` inversions.
fn extend(
    elements: &[SkewElement],
    used: &mut [bool],
    prefix: SkewElement,
    odd: bool,
    total: &mut SkewElement,
) -> Result<()> {
    if used.iter().all(|&u| u) {
        *total = if odd { total.checked_sub(&prefix)? } else { total.checked_add(&prefix)? };
        return Ok(());
    }
    let mut rank = 0;
    for i in 0..elements.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let next = prefix.checked_mul(&elements[i])?;
        extend(elements, used, next, odd ^ (rank % 2 == 1), total)?;
        used[i] = false;
        rank += 1;
    }
    Ok(())
}
