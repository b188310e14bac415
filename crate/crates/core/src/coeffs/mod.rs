//! Arithmetic and linear algebra over 𝔽 = ℤ/p and 𝔾 = ℤ/p².
//!
//! [`Matrix`] is a dense matrix over either ring and carries the
//! diagonalization used for homology over 𝔾. [`FMatrix`] is the field
//! workhorse for ranks, kernels and solving; at p = 2 its rows are packed
//! into machine words.

mod dense;
mod field;
mod ring;

use thiserror::Error;

pub use dense::{
    g_diagonalize, kernel_generators, span_contains, span_includes, span_log_order,
    Diagonalization, Matrix,
};
pub use field::{F2Echelon, F2Vector, FMatrix};
pub use ring::{Prime, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("{0} is not a prime below 65536")]
    NotPrime(u32),
    #[error("dimension mismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Rank of `m` and a basis of its kernel.
pub fn f_rank_kernel(m: &FMatrix) -> (usize, Vec<Vec<u32>>) {
    m.rank_kernel()
}

/// Some `x` with `m · x = b`, or `None` when the system is inconsistent.
pub fn f_solve(m: &FMatrix, b: &[u32]) -> Result<Option<Vec<u32>>, CoeffError> {
    m.solve(b)
}
