//! Computational core for the mod-2 hit problem: monomial bookkeeping,
//! Steenrod squares on polynomial algebras, GF(2) row echelon machinery,
//! admissible-monomial bases of the quotients `QP_k = F2 ⊗_A P_k`, the
//! Kameko squaring map, and linear-group invariants of the quotients.
//!
//! Everything is exact arithmetic over F2; there are no floating-point
//! tolerances anywhere in this crate.

pub mod action;
pub mod arith;
pub mod gf2;
pub mod hit;
pub mod kameko;
pub mod mono;
pub mod steenrod;

pub use mono::{Monomial, Part, Polynomial, WeightVector};

/// Errors surfaced by the core operations.
///
/// Most functions in this crate are total on their documented domain and
/// panic on programmer error (mismatched variable counts deep inside an
/// algorithm is a bug, not an input condition).  The fallible entry points
/// return this type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("zeta(0) is undefined: 0 is divisible by every power of 2")]
    ZetaOfZero,

    #[error("mu-decomposition is defined for n >= 1, got 0")]
    MuDecompositionOfZero,

    #[error("no minimal spike in {k} variables at degree {degree}: mu({degree}) = {mu} > {k}")]
    NoMinimalSpike { k: usize, degree: u64, mu: u32 },

    #[error("monomials live in different ambient algebras: {0} vs {1} variables")]
    MixedVariableCount(usize, usize),

    #[error("order is only defined within a single homogeneous degree: {0} vs {1}")]
    MixedDegree(u64, u64),

    #[error("polynomial is not homogeneous: found degrees {0} and {1}")]
    Inhomogeneous(u64, u64),

    #[error("cannot parse monomial from {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("variable index {index} out of range for {k} variables")]
    VariableOutOfRange { index: usize, k: usize },

    #[error("weight vector {0:?} is not realizable: entries must lie in 0..=k with omega_1 <= k")]
    UnrealizableWeight(Vec<u32>),

    #[error("cache payload rejected: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
