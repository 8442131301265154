//! Builders for the named algebras: shift and q-shift operator algebras,
//! generalized Weyl algebras, the Gelfand–Tsetlin realization of `U(gl_n)`,
//! nilHecke elements, and the Hecke membership checker.

mod gt;
mod gwa;
mod hecke;
mod shift;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::actions::Context;
use crate::arith::RatFunc;
use crate::error::{Error, Result};
use crate::skewring::SkewElement;

pub use gt::{gt_embedding, gt_var_name};
pub use gwa::{gwa_embed, verify_gwa, witten_woronowicz, GWASpec};
pub use hecke::{demazure_elements, hecke_membership_check, nilhecke_spec, HeckeMode, RootData};
pub use shift::{build_qshift_algebra, build_shift_algebra, qshift_algebra_spec, shift_algebra_spec};

/// A context with named generators and the generators of its
/// Harish-Chandra subring `Γ`.
#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    pub context: Arc<Context>,
    pub generators: BTreeMap<String, SkewElement>,
    pub gamma_generators: Vec<RatFunc>,
}

impl AlgebraSpec {
    /// Checks that generators live in the context and `Γ` is `G`-invariant.
    pub fn new(
        context: Arc<Context>,
        generators: BTreeMap<String, SkewElement>,
        gamma_generators: Vec<RatFunc>,
    ) -> Result<Self> {
        for (name, g) in &generators {
            if **g.context() != *context {
                return Err(Error::ContextMismatch(format!("generator {name} lives in another context")));
            }
        }
        for gamma in &gamma_generators {
            if gamma.nvars() != context.nvars() {
                return Err(Error::ContextMismatch("Γ generator over the wrong variables".into()));
            }
            for (g, _) in context.group().elements() {
                if context.act_group(g, gamma)? != *gamma {
                    return Err(Error::NotInvariant(gamma.to_text(context.names())));
                }
            }
        }
        Ok(AlgebraSpec { context, generators, gamma_generators })
    }

    pub fn generator(&self, name: &str) -> Result<&SkewElement> {
        self.generators.get(name).ok_or_else(|| Error::Definition(format!("unknown generator {name:?}")))
    }
}

#[cfg(test)]
mod tests;
