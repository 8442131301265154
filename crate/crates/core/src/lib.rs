//! Exact computation in skew monoid rings `L * M` over rational function
//! fields `L`, their `G`-invariants (Galois rings), and verification
//! routines for the constructions built on them.
//!
//! Product convention used throughout: `(a·μ)(b·ν) = a·μ(b)·(μν)`, i.e. the
//! monoid element acts on the coefficient to its right.

pub mod actions;
pub mod analysis;
pub mod arith;
pub mod constructors;
mod error;
pub mod report;
pub mod skewring;
#[cfg(test)]
mod test_support;

pub use error::{Error, Result};

/// Engine version recorded in run reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
