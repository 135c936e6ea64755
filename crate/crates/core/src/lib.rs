//! Finite 2-Segal sets and the structures built from them.
//!
//! Truncated simplicial sets are held as explicit face and degeneracy
//! tables. On top of those tables the crate decides the Segal and 2-Segal
//! conditions, passes between 2-Segal sets and pseudomonoids in the
//! bicategory of spans of finite sets, and computes Hall and incidence
//! algebras over exact rationals.

pub mod algebra;
pub mod category;
#[cfg(feature = "cli")]
pub mod cli;
pub mod corpus;
pub mod generators;
pub mod jsonio;
pub mod pseudomonoid;
pub mod segal;
pub mod simplicial;
pub mod span;

pub use category::PartialCategory;
pub use simplicial::{SimplicialSet, ElementId};
