//! Exact sparse linear algebra over Q and GF(p).

pub mod echelon;
pub mod scalar;
pub mod sparse;
pub mod subspace;

pub use echelon::{
    dense_rref, rank, rref, rref_with_threshold, Echelon, Insert, DEFAULT_DENSE_THRESHOLD,
};
pub use scalar::{sign, Field, Scalar};
pub use sparse::{Accumulator, SparseMatrix, SparseVec};
pub use subspace::{combine, kernel_basis, solve, subspace_quotient, vector_from_i64, Subspace};
