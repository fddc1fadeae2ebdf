//! Regularization of Bauer spectral factors into orthogonal SA4 banks.
//!
//! * [`recover_approximate`] averages the magnitudes of the raw factor and
//!   restores the SA4 sign structure.
//! * [`recover_exact`] rotates the factor by the estimated angle `θ` and then
//!   averages mirrored tap pairs.
//! * [`complete_qr`] builds the highpass filter from the orthogonal complement
//!   of the lowpass shift constraints.
//! * [`error_report`] measures a recovered bank against a reference bank.

mod complete;
mod errors;
mod pipelines;

pub use complete::{complete_qr, qr_factor, RANK_TOL};
pub use errors::{error_report, ErrorReport};
pub use pipelines::{exact_angle, recover_approximate, recover_exact, ExactRecovery, RecoveryMethod, RecoveryResult};

use thiserror::Error;

/// Errors raised by the recovery pipelines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum RecoverError {
    /// The factor is not a 2×2, four-tap filter.
    #[error("expected r = 2 with 4 taps, got r = {r} with {taps} taps")]
    Structure { r: usize, taps: usize },
    /// `even` or `odd` lies outside `[−1, 1]`.
    #[error("angle argument `{name}` = {value} lies outside [-1, 1]")]
    Domain { name: &'static str, value: f64 },
    /// The constraint matrix of the QR completion is rank deficient.
    #[error("QR completion is ambiguous: |R[{index},{index}]| = {value:e} is below {tol:e}")]
    RankDeficient { index: usize, value: f64, tol: f64 },
    /// Candidate and reference banks have different shapes.
    #[error("shape mismatch between candidate and reference banks")]
    ShapeMismatch,
    /// Bank construction failed.
    #[error("{0}")]
    Bank(String),
}

impl From<msf_filters::FilterError> for RecoverError {
    fn from(e: msf_filters::FilterError) -> Self {
        RecoverError::Bank(e.to_string())
    }
}

impl From<msf_lpoly::LpolyError> for RecoverError {
    fn from(e: msf_lpoly::LpolyError) -> Self {
        RecoverError::Bank(e.to_string())
    }
}

/// Convenience alias for results in this crate.
pub type Result<T> = std::result::Result<T, RecoverError>;

pub(crate) fn check_structure(f: &msf_lpoly::CausalMatrixFilter) -> Result<()> {
    if f.r() != 2 || f.taps().len() != 4 {
        return Err(RecoverError::Structure {
            r: f.r(),
            taps: f.taps().len(),
        });
    }
    Ok(())
}
