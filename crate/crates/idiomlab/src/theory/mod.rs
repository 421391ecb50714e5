//! The mathematical content: spectra and nuclei of a module, the `Ler`
//! operator, module classes, and the executable theorem audit.

mod analysis;
mod audit;
mod classify;
mod maps;

pub use analysis::{Annihilator, Hypotheses, HypothesisStatus, ModuleAnalysis};
pub use audit::{theorem_audit, theorem_audit_with, AuditEntry, Verdict};
pub use classify::{
    classify, is_gelfand, is_pm, is_quasi_duo, is_strongly_harmonic, ClassVerdict, Classification,
};
pub use maps::{
    eta_spectral_map, gamma_retraction, induced_frame_morphism, psi_spm_isomorphism,
    theta_homeomorphism, FrameMorphismReport, GammaReport, PsiSpmReport, SpectralMapReport,
};
