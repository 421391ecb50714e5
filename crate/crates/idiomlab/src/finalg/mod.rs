//! Finite rings, finite left modules, and the maps between modules.
//!
//! Everything downstream (lattices, spectra, frames, classifiers) consumes
//! the types built here. All objects are immutable after validation.

mod hom;
mod module;
mod ring;

pub use hom::{check_quasi_projective, enumerate_homs, HomCache, ModuleMap, QuasiProjectivity};
pub use module::{
    closure, direct_power, quotient_with_projection, FiniteModule, ModuleSpec,
};
pub use ring::{FiniteRing, RingSpec};
