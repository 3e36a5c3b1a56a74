//! The Ext-algebra of a connected DG algebra, its filtrations and Tor.

mod algebra;
mod graded;
mod iso;
mod tor;

pub use algebra::{ext_algebra, ExtAlgebra, ExtBasis};
pub use graded::{associated_graded, FilteredGraded};
pub use iso::{find_isomorphism, is_isomorphism, IsoSearch, MIN_ISO_TRIALS};
pub use tor::{ext_dims, tor_dims, DimTable};

use crate::error::Result;

/// `gr_F(E)` for the stage filtration, computed on `E / F_stages`.
pub fn gr_of_filtration(e: &ExtAlgebra) -> Result<FilteredGraded> {
    let alg = e.truncated_algebra()?;
    associated_graded(&alg, &e.filtration())
}

/// `gr_J(E)` for the radical filtration of the full algebra.
pub fn radical_filtration(e: &ExtAlgebra) -> Result<FilteredGraded> {
    let alg = e.algebra()?;
    associated_graded(&alg, &alg.radical_powers()?)
}
