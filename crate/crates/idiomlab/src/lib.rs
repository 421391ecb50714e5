//! Spectral and lattice-theoretic invariants of finite rings and modules.
//!
//! Everything is computed exhaustively from multiplication tables: submodule
//! lattices with their module product, relative spectra with the hull-kernel
//! topology, the nuclei cut out by spectra and maximal submodules, the
//! `Ler` operator, and the resulting classification of modules as strongly
//! harmonic, Gelfand, quasi-duo, or pm.

pub mod bitset;
pub mod catalog;
pub mod error;
pub mod finalg;
pub mod fintop;
pub mod limits;
pub mod ptfree;
pub mod report;
pub mod sublat;
pub mod theory;

pub use error::{Error, Result};
pub use limits::Limits;
