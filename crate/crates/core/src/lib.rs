//! Decides over which subspaces and subsystems a given set of Hamiltonians
//! achieves universal quantum control.
//!
//! The pipeline generates the dynamical Lie algebra of the available
//! interactions by iterated-commutator closure, decomposes the state space
//! into irreducible invariant subspaces and isotypic components through the
//! commutant, and applies the dimension criterion `dim = d² − 1` to each
//! candidate code. A finite-group front end covers interaction sets drawn
//! from a represented group algebra, where generic Hermitian elements make
//! every higher-dimensional irreducible sector fully controllable.
//!
//! Entry points:
//! - [`universality::analyze`] — Hamiltonians in, [`universality::UniversalityReport`] out.
//! - [`group::group_closure`] + [`group::group_algebra_analyze`] — the group-algebra route.
//! - [`catalog::problem_for`] — bundled example systems as problem files.

pub mod catalog;
pub mod decompose;
pub mod error;
pub mod group;
pub mod lie;
pub mod linalg;
pub mod models;
pub mod problem;
pub mod report;
pub mod tolerances;
pub mod universality;

pub use error::{Error, Result};
pub use linalg::{CMatrix, C64};
pub use tolerances::Tolerances;
pub use universality::{analyze, UniversalityReport};
