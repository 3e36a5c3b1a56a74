//! Minimal semifree resolutions, morphisms between them and their standard filtration.

mod filtration;
mod lift;
mod minimal;
mod semifree;

pub use filtration::{
    check_filtration_preservation, in_tensor, standard_filtration, StandardFiltration,
};
pub use lift::{lift_map, lift_scalar, lift_through};
pub use minimal::{
    minimal_resolution, reduced_cohomology_dim, resolve_dga, GeneratorReport, Resolution,
    ResolutionOptions, ResolutionReport, Side, Window,
};
pub use semifree::{Generator, Morphism, SemifreeModule};
