//! Good multifilter properties of order (1, 1, 1).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use msf_filters::{FilterBank, PrefilterPair};

use crate::response::mask;
use crate::{AnalysisError, Result};

/// Tolerance on each GMP residual.
pub const GMP_TOL: f64 = 1e-8;

fn e(r: usize, omega: f64) -> DVector<Complex64> {
    DVector::from_fn(r, |k, _| Complex64::from_polar(1.0, -(k as f64) * omega))
}

fn residual(m: &DMatrix<Complex64>, v: &DVector<Complex64>, target: Option<&DVector<Complex64>>) -> f64 {
    let out = m * v;
    let diff = match target {
        Some(t) => out - t,
        None => out,
    };
    diff.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// GMP (1,1,1) evaluated on `b` conjugated by `q` (taps `qᵀ X_k q`):
/// `H(0)e(0) = e(0)`, `H(π)e(π) = 0`, `G(0)e(0) = 0`, each to [`GMP_TOL`].
///
/// A bank without a highpass fails the `G` condition.
pub fn gmp_order_111_with(b: &FilterBank, q: &PrefilterPair) -> Result<bool> {
    gmp_order_111_tol(b, q, GMP_TOL)
}

/// [`gmp_order_111_with`] with every residual compared against `tol`.
pub fn gmp_order_111_tol(b: &FilterBank, q: &PrefilterPair, tol: f64) -> Result<bool> {
    if q.r() != b.r() {
        return Err(AnalysisError::PrefilterMismatch {
            prefilter: q.r(),
            r: b.r(),
        });
    }
    let bal = b.conjugated(q.q());
    let r = b.r();
    let pi = std::f64::consts::PI;
    let Some(g) = bal.highpass() else {
        return Ok(false);
    };
    let e0 = e(r, 0.0);
    let ok = residual(&mask(bal.lowpass(), 0.0), &e0, Some(&e0)) <= tol
        && residual(&mask(bal.lowpass(), pi), &e(r, pi), None) <= tol
        && residual(&mask(g, 0.0), &e0, None) <= tol;
    Ok(ok)
}

/// Haar prefilter for `r = 2`, identity otherwise.
pub fn default_prefilter(r: usize) -> PrefilterPair {
    if r == 2 {
        PrefilterPair::haar()
    } else {
        PrefilterPair::identity(r)
    }
}

/// GMP (1,1,1) of the Haar-balanced bank for `r = 2`, of the bank as given otherwise.
pub fn gmp_order_111(b: &FilterBank) -> bool {
    gmp_order_111_with(b, &default_prefilter(b.r())).unwrap_or(false)
}
