//! Exact computations for connected DG algebras: cohomology, minimal semifree
//! resolutions, Ext-algebras, bar/cobar constructions and Koszul-type tests.

pub mod barcobar;
pub mod dga;
pub mod error;
pub mod exactlin;
pub mod ext;
pub mod gradedalg;
pub mod koszul;
pub mod resolution;
pub mod samples;

pub use error::{Error, Result};
pub use exactlin::{Field, Scalar, SparseMatrix, SparseVec, Subspace};
