//! MAE/MSE error ledger between banks.

use msf_filters::FilterBank;
use msf_lpoly::CausalMatrixFilter;

use crate::{RecoverError, Result};

/// Errors of a candidate bank against a reference bank.
///
/// MAE values are maxima of absolute entry differences; MSE values are means
/// of squared entry differences.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    /// Max-abs error over all lowpass entries.
    pub mae_mf: f64,
    /// Mean squared error over all lowpass entries.
    pub mse_mf: f64,
    /// Max-abs error over all highpass entries, when both banks have one.
    pub mae_mwf: Option<f64>,
    /// Mean squared error over all highpass entries, when both banks have one.
    pub mse_mwf: Option<f64>,
    /// Max-abs error of each lowpass tap.
    pub mae_mc: Vec<f64>,
    /// Mean squared error of each lowpass tap.
    pub mse_mc: Vec<f64>,
}

fn tapwise(a: &CausalMatrixFilter, b: &CausalMatrixFilter) -> Result<(Vec<f64>, Vec<f64>)> {
    if a.r() != b.r() || a.taps().len() != b.taps().len() {
        return Err(RecoverError::ShapeMismatch);
    }
    let mut mae = Vec::new();
    let mut mse = Vec::new();
    for (x, y) in a.taps().iter().zip(b.taps()) {
        let d = x - y;
        mae.push(d.iter().fold(0.0_f64, |m, v| m.max(v.abs())));
        mse.push(d.iter().map(|v| v * v).sum::<f64>() / d.len() as f64);
    }
    Ok((mae, mse))
}

fn summary(mae: &[f64], mse: &[f64]) -> (f64, f64) {
    (
        mae.iter().copied().fold(0.0, f64::max),
        mse.iter().sum::<f64>() / mse.len() as f64,
    )
}

/// Error ledger of `candidate` against `reference`.
pub fn error_report(candidate: &FilterBank, reference: &FilterBank) -> Result<ErrorReport> {
    let (mae_mc, mse_mc) = tapwise(candidate.lowpass(), reference.lowpass())?;
    let (mae_mf, mse_mf) = summary(&mae_mc, &mse_mc);
    let (mae_mwf, mse_mwf) = match (candidate.highpass(), reference.highpass()) {
        (Some(a), Some(b)) => {
            let (mae, mse) = tapwise(a, b)?;
            let (x, y) = summary(&mae, &mse);
            (Some(x), Some(y))
        }
        _ => (None, None),
    };
    Ok(ErrorReport {
        mae_mf,
        mse_mf,
        mae_mwf,
        mse_mwf,
        mae_mc,
        mse_mc,
    })
}
