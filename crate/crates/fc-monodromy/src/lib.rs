//! Exact monodromy analysis for Lauricella's F_C hypergeometric system.
//!
//! The circuit matrices of the F_C system in n variables act on a
//! 2^n-dimensional solution space and have entries in a cyclotomic field
//! determined by the (rational) parameters. Working entirely in exact
//! cyclotomic arithmetic, this crate:
//!
//! - builds the monodromy generators and checks the defining relations
//!   of the fundamental group ([`monodromy`]),
//! - decides irreducibility and finiteness of the monodromy group
//!   ([`classifier`]),
//! - enumerates finite monodromy groups and their reflection subgroups
//!   element by element ([`groupkit`]),
//! - verifies the two reduction lemmas that split the reflection
//!   subgroup into a product of smaller ones ([`decomposition`]), and
//! - classifies finite irreducible monodromy groups by the structure of
//!   the reflection subgroup ([`classifier::structure`]).
//!
//! No floating point is used anywhere: every matrix entry is a canonical
//! polynomial in a root of unity with rational coefficients, so equality
//! tests are exact and all reported cardinalities and verdicts are
//! certificates rather than numerical estimates.

pub mod classifier;
pub mod cli;
pub mod cyclotomic;
pub mod decomposition;
pub mod error;
pub mod groupkit;
pub mod linalg;
pub mod monodromy;

pub use error::{Error, Result};
