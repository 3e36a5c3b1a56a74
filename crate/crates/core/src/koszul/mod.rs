//! Decision procedures for Koszul-type properties.

mod dg;
mod frobenius;
mod gorenstein;
mod graded;
mod quadratic;
mod quasi;
mod verdict;

pub use dg::{is_koszul_dg, koszul_dg_from_resolution, KoszulRoutes};
pub use frobenius::{is_frobenius, socle_dim, EXHAUSTIVE_LIMIT, RANDOM_FUNCTIONALS};
pub use gorenstein::{as_gorenstein, as_gorenstein_from, generated_in_degree_one, rhom_dims};
pub use graded::{graded_resolution, is_koszul_graded, GradedResolution};
pub use quadratic::{quadratic_dual, QuadraticData};
pub use quasi::{
    is_quasi_koszul, is_strongly_quasi_koszul, local_resolution, LocalResolution, QuasiFailure,
};
pub use verdict::{Outcome, Scope, Verdict};
