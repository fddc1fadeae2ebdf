//! Approximate and exact recovery pipelines.

use nalgebra::DMatrix;

use msf_bauer::SpectralFactor;
use msf_filters::FilterBank;
use msf_lpoly::CausalMatrixFilter;

use crate::{check_structure, complete_qr, RecoverError, Result};

/// Which pipeline produced a [`RecoveryResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecoveryMethod {
    /// Magnitude averaging with the SA4 sign template.
    Approximate,
    /// Factor multiplied by the `θ` reflection.
    ExactRotated,
    /// Rotated factor with mirrored tap pairs averaged.
    ExactAveraged,
}

impl RecoveryMethod {
    /// Short label used in reports and bank names.
    pub fn label(self) -> &'static str {
        match self {
            RecoveryMethod::Approximate => "approximate",
            RecoveryMethod::ExactRotated => "exact-rotated",
            RecoveryMethod::ExactAveraged => "exact-averaged",
        }
    }
}

/// A bank produced by one of the pipelines.
#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryResult {
    /// Producing pipeline.
    pub method: RecoveryMethod,
    /// Recovered lowpass with its QR-completed highpass.
    pub bank: FilterBank,
    /// Angle used by the exact pipeline.
    pub theta: Option<f64>,
    /// Bauer block size of the source factor.
    pub f: usize,
}

/// Output of [`recover_exact`].
#[derive(Debug, Clone, PartialEq)]
pub struct ExactRecovery {
    /// Estimated angle `θ`.
    pub theta: f64,
    /// Normalized even-column sum fed to `acos`.
    pub even: f64,
    /// Normalized odd-column sum fed to `asin`.
    pub odd: f64,
    /// Reflected factor `C^{SF} R(θ)`.
    pub rotated: RecoveryResult,
    /// Reflected factor after pair averaging.
    pub averaged: RecoveryResult,
}

fn mean_abs(flat: &DMatrix<f64>, cells: [(usize, usize); 4]) -> f64 {
    cells.iter().map(|&(p, j)| flat[(p, j)].abs()).sum::<f64>() / 4.0
}

fn finish(method: RecoveryMethod, lowpass: CausalMatrixFilter, theta: Option<f64>, f: usize) -> Result<RecoveryResult> {
    let highpass = complete_qr(&lowpass)?;
    let bank = FilterBank::new(format!("sa4-{}-f{f}", method.label()), lowpass, Some(highpass))?;
    Ok(RecoveryResult { method, bank, theta, f })
}

/// Approximate recovery: four averaged magnitudes placed in the SA4 sign template.
pub fn recover_approximate(factor: &SpectralFactor) -> Result<RecoveryResult> {
    check_structure(&factor.taps)?;
    let l = factor.flat();
    let a = mean_abs(&l, [(0, 1), (1, 1), (0, 7), (1, 7)]);
    let b = mean_abs(&l, [(0, 0), (1, 0), (0, 6), (1, 6)]);
    let c = mean_abs(&l, [(0, 3), (1, 3), (0, 5), (1, 5)]);
    let d = mean_abs(&l, [(0, 2), (1, 2), (0, 4), (1, 4)]);
    let lowpass = CausalMatrixFilter::from_rows(
        2,
        &[
            vec![a, b, a, -b],
            vec![c, d, -c, d],
            vec![c, -d, c, d],
            vec![a, -b, -a, -b],
        ],
    )?;
    finish(RecoveryMethod::Approximate, lowpass, None, factor.f)
}

/// The angle `θ = ½(acos(even) + asin(odd))` with its two arguments.
pub fn exact_angle(taps: &CausalMatrixFilter) -> Result<(f64, f64, f64)> {
    check_structure(taps)?;
    let l = taps.flatten();
    let col = |j: usize| l[(0, j)] + l[(0, j + 4)] + l[(1, j)] + l[(1, j + 4)];
    let even = (col(0).abs() + col(2).abs()) / std::f64::consts::SQRT_2;
    let odd = (col(1).abs() + col(3).abs()) / std::f64::consts::SQRT_2;
    for (name, value) in [("even", even), ("odd", odd)] {
        if !(-1.0..=1.0).contains(&value) {
            return Err(RecoverError::Domain { name, value });
        }
    }
    Ok((0.5 * (even.acos() + odd.asin()), even, odd))
}

fn numpy_sign(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v.signum()
    }
}

/// Exact recovery: reflect by `R(θ) = [[cos θ, sin θ], [sin θ, −cos θ]]`, then
/// average the magnitudes of tap pairs `(0, 3)` and `(1, 2)` keeping the signs
/// of the reflected factor.
pub fn recover_exact(factor: &SpectralFactor) -> Result<ExactRecovery> {
    let (theta, even, odd) = exact_angle(&factor.taps)?;
    let (s, c) = theta.sin_cos();
    let reflection = DMatrix::from_row_slice(2, 2, &[c, s, s, -c]);
    let h2 = factor.taps.right_mul(&reflection);
    let t = h2.taps();
    let partner = [3, 2, 1, 0];
    let h3: Vec<DMatrix<f64>> = (0..4)
        .map(|k| {
            let (x, y) = (&t[k], &t[partner[k]]);
            DMatrix::from_fn(2, 2, |i, j| {
                numpy_sign(x[(i, j)]) * 0.5 * (x[(i, j)].abs() + y[(i, j)].abs())
            })
        })
        .collect();
    let h3 = CausalMatrixFilter::new(2, h3)?;
    Ok(ExactRecovery {
        theta,
        even,
        odd,
        rotated: finish(RecoveryMethod::ExactRotated, h2, Some(theta), factor.f)?,
        averaged: finish(RecoveryMethod::ExactAveraged, h3, Some(theta), factor.f)?,
    })
}
