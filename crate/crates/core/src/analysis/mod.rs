//! Verification over skew ring elements: relation checking, center search,
//! support lattices, Ore witnesses, standard identities and growth.

mod center;
mod expr;
mod growth;
mod jacobian;
mod lattice;
mod linalg;
mod ore;
mod pi;
mod relations;

pub use center::{center_candidates, commutant_filter};
pub use expr::{parse_coefficient, parse_element, parse_relation, Expr};
pub use growth::{
    ball_profile, fit_slope, growth_profile, monoid_growth, span_dimension, GrowthProfile, DEFAULT_DIM_CAP,
    SLOPE_TOLERANCE,
};
pub use jacobian::{algebraically_independent, jacobian_rank, random_point};
pub use lattice::{lattice_contains, smith_normal_form, support_lattice_rank, LatticeRank};
pub use ore::ore_witness;
pub use pi::{standard_identity, STANDARD_IDENTITY_CAP};
pub use relations::{gl_relations, verify_relations, verify_relations_parallel, Relation, RelationSet};
