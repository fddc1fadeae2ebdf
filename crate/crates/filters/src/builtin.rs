//! Parametric and embedded filter banks.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use msf_lpoly::CausalMatrixFilter;

use crate::{FilterBank, FilterError, Result};

/// The SA4 parameter `t = 4 + √15`.
pub const SA4_T: f64 = 7.872983346207417;

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 4] = ["sa4", "ghm", "cl", "haar-scalar"];

/// SA4 bank for parameter `t`, with `α = 1/(√2(1+t²))`.
///
/// Lowpass taps are `α[[1,t],[1,−t]]`, `α[[t²,t],[−t²,t]]`, `α[[t²,−t],[t²,t]]`,
/// `α[[1,−t],[−1,−t]]`. Highpass taps are `−α[[t,−1],[t,1]]`, `−α[[−t,t²],[t,t²]]`,
/// `−α[[−t,−t²],[−t,t²]]`, `−α[[t,1],[−t,1]]`.
pub fn sa4_family(t: f64) -> Result<FilterBank> {
    if t == 0.0 {
        return Err(FilterError::ZeroParameter);
    }
    let a = 1.0 / (SQRT_2 * (1.0 + t * t));
    let t2 = t * t;
    let low = [[1.0, t, 1.0, -t], [t2, t, -t2, t], [t2, -t, t2, t], [1.0, -t, -1.0, -t]];
    let high = [[t, -1.0, t, 1.0], [-t, t2, t, t2], [-t, -t2, -t, t2], [t, 1.0, -t, 1.0]];
    let scaled = |rows: &[[f64; 4]; 4], s: f64| -> Vec<Vec<f64>> {
        rows.iter().map(|m| m.iter().map(|v| s * v).collect()).collect()
    };
    let lowpass = CausalMatrixFilter::from_rows(2, &scaled(&low, a))?;
    let highpass = CausalMatrixFilter::from_rows(2, &scaled(&high, -a))?;
    FilterBank::new("sa4", lowpass, Some(highpass))
}

/// Returns the named bank: `sa4`, `ghm`, `cl` or `haar-scalar`.
pub fn builtin(name: &str) -> Result<FilterBank> {
    match name {
        "sa4" => sa4_family(SA4_T),
        "ghm" => ghm(),
        "cl" => chui_lian(),
        "haar-scalar" => {
            let s = FRAC_1_SQRT_2;
            let lowpass = CausalMatrixFilter::from_rows(1, &[vec![s], vec![s]])?;
            let highpass = CausalMatrixFilter::from_rows(1, &[vec![s], vec![-s]])?;
            FilterBank::new("haar-scalar", lowpass, Some(highpass))
        }
        other => Err(FilterError::UnknownName(other.to_string())),
    }
}

/// Geronimo–Hardin–Massopust bank, normalized so that `Σ_k C_k C_kᵀ = I`.
fn ghm() -> Result<FilterBank> {
    let s = SQRT_2;
    let lowpass = CausalMatrixFilter::from_rows(
        2,
        &[
            vec![3.0 / (5.0 * s), 4.0 / 5.0, -1.0 / 20.0, -3.0 / (10.0 * s)],
            vec![3.0 / (5.0 * s), 0.0, 9.0 / 20.0, 1.0 / s],
            vec![0.0, 0.0, 9.0 / 20.0, -3.0 / (10.0 * s)],
            vec![0.0, 0.0, -1.0 / 20.0, 0.0],
        ],
    )?;
    let highpass = CausalMatrixFilter::from_rows(
        2,
        &[
            vec![-1.0 / 20.0, -3.0 / (10.0 * s), 1.0 / (10.0 * s), 3.0 / 10.0],
            vec![9.0 / 20.0, -1.0 / s, -9.0 / (10.0 * s), 0.0],
            vec![9.0 / 20.0, -3.0 / (10.0 * s), 9.0 / (10.0 * s), -3.0 / 10.0],
            vec![-1.0 / 20.0, 0.0, -1.0 / (10.0 * s), 0.0],
        ],
    )?;
    FilterBank::new("ghm", lowpass, Some(highpass))
}

/// Chui–Lian three-tap bank, normalized so that `Σ_k C_k C_kᵀ = I`.
fn chui_lian() -> Result<FilterBank> {
    let k = 1.0 / (4.0 * SQRT_2);
    let s7 = 7f64.sqrt();
    let sc = |v: [f64; 4]| v.iter().map(|x| x * k).collect::<Vec<_>>();
    let lowpass = CausalMatrixFilter::from_rows(
        2,
        &[
            sc([2.0, -2.0, s7, -s7]),
            sc([4.0, 0.0, 0.0, 2.0]),
            sc([2.0, 2.0, -s7, -s7]),
        ],
    )?;
    let highpass = CausalMatrixFilter::from_rows(
        2,
        &[
            sc([-2.0, 2.0, -1.0, 1.0]),
            sc([4.0, 0.0, 0.0, 2.0 * s7]),
            sc([-2.0, -2.0, 1.0, 1.0]),
        ],
    )?;
    FilterBank::new("cl", lowpass, Some(highpass))
}
