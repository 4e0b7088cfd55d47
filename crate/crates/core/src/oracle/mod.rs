//! Independent Gaussian verification path.
//!
//! Builds the joint covariance of every variable in the two coding
//! constructions and evaluates each information term as a ratio of
//! log-determinants. Nothing here calls the closed forms except the
//! `verify_*` functions, which exist to compare against them.

mod construct;
mod covariance;
mod sampling;
mod verify;

pub use construct::{
    build_cov_informed_both, build_cov_informed_source, CancellationLayers, InformedBothLayers,
};
pub use covariance::{
    gaussian_cmi, CovarianceSystem, GaussianBuilder, DEPENDENCE_TOL, DET_FLOOR, PSD_TOL,
};
pub use sampling::{sample_covariance, sample_mi_estimate, MIN_SAMPLES};
pub use verify::{
    informed_both_terms, informed_both_unlayered_private, informed_source_terms, verify_gdpc,
    verify_remark3, verify_theorem1, InformedBothTerms, InformedSourceTerms, TermCheck,
    VerifyReport,
};
