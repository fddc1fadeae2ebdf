//! Mask evaluation and frequency-response tables.

use nalgebra::DMatrix;
use num_complex::Complex64;

use msf_filters::FilterBank;
use msf_lpoly::CausalMatrixFilter;

use crate::{AnalysisError, Result};

/// `(1/√2) Σ_k X_k e^{ikω}`.
pub fn mask(filter: &CausalMatrixFilter, omega: f64) -> DMatrix<Complex64> {
    filter.to_laurent().evaluate(omega) * Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)
}

/// Entrywise mask magnitudes on a uniform grid over `[0, π]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyResponse {
    /// Grid points, `omega[0] = 0` and `omega[last] = π`.
    pub omega: Vec<f64>,
    /// `|H(ω)|` entrywise at each grid point.
    pub lowpass: Vec<DMatrix<f64>>,
    /// `|G(ω)|` entrywise at each grid point, when the bank has a highpass.
    pub highpass: Option<Vec<DMatrix<f64>>>,
}

/// Samples `|H|` and `|G|` at `grid` equally spaced frequencies in `[0, π]`.
pub fn frequency_response(b: &FilterBank, grid: usize) -> Result<FrequencyResponse> {
    if grid < 2 {
        return Err(AnalysisError::GridTooSmall(grid));
    }
    let omega: Vec<f64> = (0..grid)
        .map(|i| {
            if i == grid - 1 {
                std::f64::consts::PI
            } else {
                std::f64::consts::PI * i as f64 / (grid - 1) as f64
            }
        })
        .collect();
    let sample =
        |f: &CausalMatrixFilter| -> Vec<DMatrix<f64>> { omega.iter().map(|&w| mask(f, w).map(|z| z.norm())).collect() };
    Ok(FrequencyResponse {
        lowpass: sample(b.lowpass()),
        highpass: b.highpass().map(sample),
        omega,
    })
}
