//! Exact-rational engine for nonassociative algebras: Hurwitz and tensor-product
//! algebras, Hermitian 3×3 Jordan algebras, derivation algebras, the Tits
//! construction and Lie-algebra diagnostics.

pub mod algebra;
pub mod construct;
pub mod coset;
pub mod derivations;
pub mod jordan;
pub mod lie;
pub mod linalg;
pub mod profile;
pub mod rational;
pub mod report;
pub mod tits;

pub use algebra::{AlgebraTable, Element};
pub use linalg::{SparseVec, Subspace};
pub use rational::Rational;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("unknown algebra {0:?}")]
    UnknownAlgebra(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
