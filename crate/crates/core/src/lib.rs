//! Group-graded finite-dimensional algebras over prime fields: radicals,
//! graded decompositions and graded Frobenius criteria.

pub mod algebra;
pub mod config;
pub mod constructions;
pub mod corpus;
pub mod decomp;
pub mod error;
pub mod field;
pub mod format;
pub mod frobenius;
pub mod group;
pub mod hom;
pub mod ideals;
pub mod linalg;
pub mod module;
pub mod par;
pub mod radicals;
pub mod report;
pub mod subspace;
pub mod verify;

pub use algebra::GradedAlgebra;
pub use error::{Error, Result};
pub use field::PrimeField;
pub use group::FiniteGroup;
pub use module::{GradedModule, Side};
pub use subspace::GradedSubspace;
