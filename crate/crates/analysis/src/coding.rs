//! Coding gain under an AR(1) input model.

use msf_filters::FilterBank;
use serde::Serialize;

use crate::{AnalysisError, Result};

/// Default intersample correlation.
pub const DEFAULT_RHO: f64 = 0.95;

/// Coding gain with the channel variances it was computed from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CodingGain {
    /// Arithmetic over geometric mean of the variances.
    pub ratio: f64,
    /// `10·log10(ratio)`.
    pub db: f64,
    /// Variances of the `2r` channels, lowpass rows first.
    pub variances: Vec<f64>,
    /// Largest deviation from orthogonality of the bank; the gain is only
    /// meaningful when this is small.
    pub orthogonality_defect: f64,
}

/// One-level coding gain of `b` for an AR(1) input with correlation `rho`.
///
/// Channel `m` of a filter `B` has the scalar impulse response
/// `a_m = [B_0[m,:], B_1[m,:], …, B_n[m,:]]`, and its variance is `a_mᵀ R a_m`
/// with `R_ij = ρ^{|i−j|}`.
pub fn coding_gain(b: &FilterBank, rho: f64) -> Result<CodingGain> {
    if !(0.0..1.0).contains(&rho) {
        return Err(AnalysisError::RhoOutOfRange(rho));
    }
    let high = b
        .highpass()
        .ok_or_else(|| AnalysisError::MissingHighpass(b.name().to_string()))?;
    let mut variances = Vec::with_capacity(2 * b.r());
    for filter in [b.lowpass(), high] {
        let flat = filter.flatten();
        for m in 0..b.r() {
            let a: Vec<f64> = flat.row(m).iter().copied().collect();
            let mut v = 0.0;
            for (i, x) in a.iter().enumerate() {
                for (j, y) in a.iter().enumerate() {
                    v += x * y * rho.powi((i as i32 - j as i32).abs());
                }
            }
            variances.push(v);
        }
    }
    let count = variances.len() as f64;
    let arithmetic = variances.iter().sum::<f64>() / count;
    let geometric = (variances.iter().map(|v| v.ln()).sum::<f64>() / count).exp();
    let ratio = arithmetic / geometric;
    Ok(CodingGain {
        ratio,
        db: 10.0 * ratio.log10(),
        variances,
        orthogonality_defect: b.orthogonality_defect(),
    })
}
