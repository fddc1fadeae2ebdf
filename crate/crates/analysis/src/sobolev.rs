//! Sobolev regularity from the spectrum of the transition operator.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use msf_filters::FilterBank;
use msf_lpoly::CausalMatrixFilter;

use crate::response::mask;
use crate::symmetry::{detect_symmetry, Symmetry};
use crate::{approximation_order, AnalysisError, Result};

const NULL_TOL: f64 = 1e-9;
const MATCH_TOL: f64 = 1e-6;

/// Result of [`sobolev`] with the quantities it was derived from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SobolevEstimate {
    /// `S = −½ log₂ ρ`.
    pub value: f64,
    /// Largest modulus among the eigenvalues left after deflation.
    pub spectral_radius: f64,
    /// Approximation order used for deflation.
    pub approx_order: usize,
    /// Symmetry used to restrict the operator, if one was detected.
    pub symmetry: Option<Symmetry>,
}

/// Matrix of `(TF)_i = 2 Σ_{k−l+j=2i} h_k F_j h_lᵀ`, `h_k = C_k/√2`, acting on
/// sequences `F_j ∈ ℝ^{r×r}`, `|j| ≤ n`. Coordinates are ordered by `j`, then
/// row-major within each block.
pub fn transition_matrix(c: &CausalMatrixFilter) -> DMatrix<f64> {
    let r = c.r();
    let n = c.n() as i64;
    let h: Vec<DMatrix<f64>> = c.taps().iter().map(|x| x * std::f64::consts::FRAC_1_SQRT_2).collect();
    let width = (2 * n + 1) as usize;
    let rr = r * r;
    let mut t = DMatrix::zeros(width * rr, width * rr);
    for j in -n..=n {
        for p in 0..r {
            for q in 0..r {
                let col = (j + n) as usize * rr + p * r + q;
                for (k, hk) in h.iter().enumerate() {
                    for (l, hl) in h.iter().enumerate() {
                        let m = k as i64 - l as i64 + j;
                        if m.rem_euclid(2) != 0 || (m / 2).abs() > n {
                            continue;
                        }
                        let row0 = (m / 2 + n) as usize * rr;
                        for a in 0..r {
                            for b in 0..r {
                                t[(row0 + a * r + b, col)] += 2.0 * hk[(a, p)] * hl[(b, q)];
                            }
                        }
                    }
                }
            }
        }
    }
    t
}

/// Orthonormal basis of `{F : F_j[a,b] = ε_a ε_b F_{−j + 2c_a − 2c_b}[a,b]}` on the window.
fn symmetric_basis(r: usize, n: i64, sym: &Symmetry) -> DMatrix<f64> {
    let width = (2 * n + 1) as usize;
    let rr = r * r;
    let dim = width * rr;
    let mut a = DMatrix::zeros(dim, dim);
    for j in -n..=n {
        for p in 0..r {
            for q in 0..r {
                let row = (j + n) as usize * rr + p * r + q;
                a[(row, row)] += 1.0;
                let jj = -j + sym.doubled_centers[p] as i64 - sym.doubled_centers[q] as i64;
                if jj.abs() <= n {
                    let s = f64::from(sym.signs[p] * sym.signs[q]);
                    a[(row, (jj + n) as usize * rr + p * r + q)] -= s;
                }
            }
        }
    }
    let svd = a.svd(false, true);
    let vt = svd.v_t.expect("requested");
    let cols: Vec<_> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= NULL_TOL)
        .map(|(i, _)| vt.row(i).transpose())
        .collect();
    DMatrix::from_columns(&cols)
}

fn deflation_targets(h0: &DMatrix<f64>, p: usize) -> Vec<Complex64> {
    let mut mu: Vec<Complex64> = h0.complex_eigenvalues().iter().copied().collect();
    if let Some(i) = mu
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 - 1.0).norm().total_cmp(&(b.1 - 1.0).norm()))
        .map(|(i, _)| i)
    {
        mu.remove(i);
    }
    let kmax = (2 * p).saturating_sub(2);
    let mut out = Vec::new();
    for k in 0..=kmax {
        let scale = 0.5f64.powi(k as i32);
        out.push(Complex64::new(scale, 0.0));
        for m in &mu {
            out.push(m * scale);
            out.push(m * scale);
        }
        for a in 0..mu.len() {
            for b in a..mu.len() {
                let copies = if a == b { 1 } else { 2 };
                for _ in 0..copies {
                    out.push(mu[a] * mu[b] * scale);
                }
            }
        }
    }
    out
}

/// Sobolev exponent `S = −½ log₂ ρ`.
///
/// The transition operator of the lowpass is restricted to the subspace
/// invariant under the detected component symmetry (the full space when none
/// is found). One copy of `2^{−k}` is removed for `k = 0..=2p−2`, where `p`
/// is the approximation order, together with the products `μ_a 2^{−k}` and
/// `μ_a μ_b 2^{−k}` over the non-unit eigenvalues `μ` of `H(0)`. `ρ` is the
/// largest modulus among the eigenvalues that remain.
pub fn sobolev(b: &FilterBank) -> Result<SobolevEstimate> {
    let c = b.lowpass();
    if c.taps().len() < 2 {
        return Err(AnalysisError::TooFewTaps(c.taps().len()));
    }
    let r = c.r();
    let n = c.n() as i64;
    let t = transition_matrix(c);
    let symmetry = detect_symmetry(c);
    let op = match &symmetry {
        Some(sym) => {
            let basis = symmetric_basis(r, n, sym);
            basis.transpose() * &t * &basis
        }
        None => t,
    };
    let mut spectrum: Vec<Option<Complex64>> = op.complex_eigenvalues().iter().copied().map(Some).collect();
    let p = approximation_order(b, 6)?;
    let h0 = mask(c, 0.0).map(|z| z.re);
    for target in deflation_targets(&h0, p) {
        let best = spectrum
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|z| (i, (z - target).norm())))
            .filter(|(_, d)| *d <= MATCH_TOL)
            .min_by(|a, b| a.1.total_cmp(&b.1));
        if let Some((i, _)) = best {
            spectrum[i] = None;
        }
    }
    let rho = spectrum.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(SobolevEstimate {
        value: -0.5 * rho.log2(),
        spectral_radius: rho,
        approx_order: p,
        symmetry,
    })
}
