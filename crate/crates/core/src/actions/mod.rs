//! Automorphisms of `L`, the acting lattice monoid, the finite group `G`
//! of variable permutations, and the conjugation action `g.μ = gμg⁻¹`.

mod automorphism;
mod context;
mod group;
mod vars;

pub use automorphism::Automorphism;
pub use context::{Context, ContextBuilder, KeySpace, LatticeMode, MonoidElement};
pub use group::{Group, GroupElement, Permutation, DEFAULT_GROUP_CAP};
pub use vars::{VarRole, VariableTable};

#[cfg(test)]
mod tests;
