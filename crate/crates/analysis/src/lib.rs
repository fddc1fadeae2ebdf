//! Quality metrics for matrix filter banks.
//!
//! * [`coding_gain`]: arithmetic over geometric mean of subband variances
//!   under an AR(1) input.
//! * [`sobolev`]: regularity estimate from the transition-operator spectrum.
//! * [`gmp_order_111`]: good-multifilter-property check at `ω ∈ {0, π}`.
//! * [`approximation_order`] and [`balance_order`]: polynomial reproduction
//!   and preservation.
//! * [`frequency_response`], [`symmetry_class`], [`detect_symmetry`].
//!
//! Masks use `H(ω) = (1/√2) Σ_k C_k e^{ikω}` and `G(ω) = (1/√2) Σ_k D_k e^{ikω}`.

mod coding;
mod gmp;
mod order;
mod response;
mod sobolev;
mod symmetry;

pub use coding::{coding_gain, CodingGain, DEFAULT_RHO};
pub use gmp::{default_prefilter, gmp_order_111, gmp_order_111_tol, gmp_order_111_with, GMP_TOL};
pub use order::{
    approximation_order, approximation_order_tol, balance_order, balance_order_tol, BALANCE_SECTION, ORDER_TOL,
};
pub use response::{frequency_response, mask, FrequencyResponse};
pub use sobolev::{sobolev, transition_matrix, SobolevEstimate};
pub use symmetry::{detect_symmetry, symmetry_class, Symmetry};

use msf_filters::FilterBank;
use serde::Serialize;
use thiserror::Error;

/// Errors raised by the metrics.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    /// The AR(1) coefficient lies outside `[0, 1)`.
    #[error("rho = {0} lies outside [0, 1)")]
    RhoOutOfRange(f64),
    /// The metric needs a highpass filter.
    #[error("bank `{0}` has no highpass filter")]
    MissingHighpass(String),
    /// The transition operator needs at least two taps.
    #[error("at least two taps are required, got {0}")]
    TooFewTaps(usize),
    /// The frequency grid needs at least two points.
    #[error("grid must have at least 2 points, got {0}")]
    GridTooSmall(usize),
    /// An order bound below 1 was requested.
    #[error("order bound must be at least 1, got {0}")]
    InvalidOrder(usize),
    /// A prefilter of the wrong size was supplied.
    #[error("prefilter size {prefilter} does not match multiplicity {r}")]
    PrefilterMismatch { prefilter: usize, r: usize },
}

/// Convenience alias for results in this crate.
pub type Result<T> = std::result::Result<T, AnalysisError>;

/// All scalar metrics of one bank.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsReport {
    /// Bank label.
    pub name: String,
    /// Coding gain as a ratio.
    pub coding_gain: f64,
    /// Coding gain in dB.
    pub coding_gain_db: f64,
    /// Sobolev regularity estimate.
    pub sobolev: f64,
    /// GMP order (1,1,1) on the Haar-balanced bank.
    pub gmp_111: bool,
    /// Approximation order.
    pub approx_order: usize,
    /// Balance order of the bank as given.
    pub balance_order: usize,
    /// Whether every scaling component is symmetric or antisymmetric.
    pub symmetric: bool,
    /// Largest deviation from the orthogonality conditions.
    pub orthogonality_defect: f64,
}

/// Computes every metric with default parameters (`ρ = 0.95`, `p_max = 6`, `q_max = 3`).
pub fn metrics(b: &FilterBank) -> Result<MetricsReport> {
    let cg = coding_gain(b, DEFAULT_RHO)?;
    Ok(MetricsReport {
        name: b.name().to_string(),
        coding_gain: cg.ratio,
        coding_gain_db: cg.db,
        sobolev: sobolev(b)?.value,
        gmp_111: gmp_order_111(b),
        approx_order: approximation_order(b, 6)?,
        balance_order: balance_order(b, 3)?,
        symmetric: detect_symmetry(b.lowpass()).is_some(),
        orthogonality_defect: b.orthogonality_defect(),
    })
}
