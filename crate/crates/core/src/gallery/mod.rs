//! Constructors and verifiers for the classical worked examples.

mod boolean;
mod discrete;
mod group;
mod hopf;
mod restriction;
mod scheme;
mod species;

pub use boolean::{bool_enumerate_kernels, bool_kernel_check, BoolInstance, BoolMode, MAX_BOOL_CARRIER};
pub use discrete::{build_discrete_monoidal_group, build_discrete_pointwise, DiscreteGroup};
pub use group::{permutations, FiniteGroup};
pub use hopf::{build_group_hopf, hopf_fourier_iso, FourierIso, GroupHopf, HopfData};
pub use restriction::{build_representable_kernel, build_restriction_kernel, FinFunctor, RestrictionKernel};
pub use scheme::{build_scheme, verify_scheme_kernel, SchemeData, SchemeGallery};
pub use species::{
    analytic_evaluate, build_species_category, species_convolve, species_hadamard, Species, SpeciesCategory,
    MAX_ANALYTIC_DIM, MAX_SPECIES_TRUNCATION,
};

#[cfg(test)]
mod tests;
