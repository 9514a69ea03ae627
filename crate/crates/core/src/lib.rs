//! Finite semigroups, ai-semirings and involution semigroups as operation
//! tables, together with the constructions, word families and identity
//! checkers used to study block-groups and their identities.

pub mod algebra;
pub mod analysis;
pub mod checker;
pub mod constructions;
pub mod corpus;
pub mod suite;
pub mod terms;

pub use algebra::{FiniteAlgebra, Kind};
