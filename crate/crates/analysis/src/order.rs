//! Approximation order and balance order.

use nalgebra::{DMatrix, DVector};

use msf_filters::FilterBank;

use crate::{AnalysisError, Result};

/// Singular-value threshold for solvability and the relative residual bound
/// for balance checks.
pub const ORDER_TOL: f64 = 1e-8;

/// Number of coarse block samples in the finite section used by [`balance_order`].
pub const BALANCE_SECTION: usize = 64;

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Conditions for orders `0..p` stacked over the unknowns `[u_0; …; u_{p−1}]`:
///
/// * `Σ_ℓ binom(k,ℓ) M_ℓ(0)ᵀ u_{k−ℓ} = 2^{−k} u_k`,
/// * `Σ_ℓ binom(k,ℓ) M_ℓ(π)ᵀ u_{k−ℓ} = 0`,
/// * `Σ_ℓ binom(k,ℓ) N_ℓ u_{k−ℓ} = 0`,
///
/// with `M_ℓ(0) = (1/√2) Σ_j (j/2)^ℓ C_j`, `M_ℓ(π) = (1/√2) Σ_j (−1)^j (j/2)^ℓ C_j`
/// and `N_ℓ = Σ_i (−i)^ℓ D_i`. The last family states that the wavelet
/// coefficients of every reproduced polynomial vanish.
fn approximation_system(b: &FilterBank, p: usize) -> DMatrix<f64> {
    let r = b.r();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let moment = |l: usize, alternate: bool| -> DMatrix<f64> {
        let mut m = DMatrix::zeros(r, r);
        for (j, c) in b.lowpass().taps().iter().enumerate() {
            let sign = if alternate && j % 2 == 1 { -1.0 } else { 1.0 };
            m += c * (sign * s * (j as f64 / 2.0).powi(l as i32));
        }
        m
    };
    let high_moment = |l: usize, d: &msf_lpoly::CausalMatrixFilter| -> DMatrix<f64> {
        let mut m = DMatrix::zeros(r, r);
        for (i, x) in d.taps().iter().enumerate() {
            m += x * (-(i as f64)).powi(l as i32);
        }
        m
    };
    let groups = if b.highpass().is_some() { 3 } else { 2 };
    let mut a = DMatrix::zeros(groups * r * p, r * p);
    for k in 0..p {
        for l in 0..=k {
            let w = binom(k, l);
            let col = (k - l) * r;
            let mut m0 = moment(l, false).transpose() * w;
            if l == 0 {
                m0 -= DMatrix::<f64>::identity(r, r) * 0.5f64.powi(k as i32);
            }
            let mpi = moment(l, true).transpose() * w;
            let mut v = a.view_mut((groups * r * k, col), (r, r));
            v += &m0;
            let mut v = a.view_mut((groups * r * k + r, col), (r, r));
            v += &mpi;
            if let Some(d) = b.highpass() {
                let n = high_moment(l, d) * w;
                let mut v = a.view_mut((groups * r * k + 2 * r, col), (r, r));
                v += &n;
            }
        }
    }
    a
}

fn solvable_with_nonzero_u0(a: &DMatrix<f64>, r: usize, tol: f64) -> bool {
    let svd = a.clone().svd(false, true);
    let vt = svd.v_t.expect("requested");
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= tol)
        .any(|(i, _)| vt.row(i).columns(0, r).iter().any(|v| v.abs() > 1e-6))
}

/// Largest `p ≤ p_max` for which the order-`p` conditions admit a solution
/// with `u_0 ≠ 0`. The highpass condition is included when the bank has one.
/// Singular values up to [`ORDER_TOL`] count as zero.
pub fn approximation_order(b: &FilterBank, p_max: usize) -> Result<usize> {
    approximation_order_tol(b, p_max, ORDER_TOL)
}

/// [`approximation_order`] with singular values up to `tol` counted as zero.
pub fn approximation_order_tol(b: &FilterBank, p_max: usize, tol: f64) -> Result<usize> {
    if p_max < 1 {
        return Err(AnalysisError::InvalidOrder(p_max));
    }
    let mut best = 0;
    for p in 1..=p_max {
        if !solvable_with_nonzero_u0(&approximation_system(b, p), b.r(), tol) {
            break;
        }
        best = p;
    }
    Ok(best)
}

/// Discrete monomial `m ↦ m^k` sampled on blocks `0..len`, stacked as `r`-vectors.
fn monomial(r: usize, len: usize, k: usize) -> DVector<f64> {
    DVector::from_fn(r * len, |m, _| (m as f64).powi(k as i32))
}

/// `(Lᵀ y)_j = Σ_i √2 C_{j−2i}ᵀ y_i` on the fine blocks whose full support lies
/// inside the coarse section, returned with the index of the first such block.
fn synthesis_interior(b: &FilterBank, y: &DVector<f64>, len: usize) -> (usize, DVector<f64>) {
    let r = b.r();
    let n = b.n();
    let first = n;
    let last = 2 * (len - 1);
    let rows = last + 1 - first;
    let mut out = DVector::zeros(r * rows);
    for j in first..=last {
        let mut acc = DVector::zeros(r);
        for (k, c) in b.lowpass().taps().iter().enumerate() {
            if k > j || (j - k) % 2 == 1 {
                continue;
            }
            let i = (j - k) / 2;
            acc += c.transpose() * y.rows(i * r, r) * std::f64::consts::SQRT_2;
        }
        out.rows_mut((j - first) * r, r).copy_from(&acc);
    }
    (first, out)
}

fn balanced_at(b: &FilterBank, k: usize, tol: f64) -> bool {
    let r = b.r();
    let len = BALANCE_SECTION;
    let (first, image) = synthesis_interior(b, &monomial(r, len, k), len);
    let rows = image.len();
    let fine = |q: usize| monomial(r, 2 * len, q).rows(first * r, rows).into_owned();
    let residual = image.clone() - fine(k) * 0.5f64.powi(k as i32);
    let scale = image.amax().max(1.0);
    if k == 0 {
        return residual.amax() <= tol * scale;
    }
    let basis = DMatrix::from_columns(&(0..k).map(fine).collect::<Vec<_>>());
    let svd = basis.clone().svd(true, true);
    let coeffs = svd.solve(&residual, 1e-12).expect("both factors requested");
    (residual - basis * coeffs).amax() <= tol * scale
}

/// Largest `q ≤ q_max` such that `Lᵀu_k − 2^{−k}u_k ∈ span{u_0, …, u_{k−1}}`
/// for all `k < q`, where `u_k` is the discrete monomial of degree `k`.
///
/// Checked on a section of [`BALANCE_SECTION`] coarse blocks, using only
/// fine blocks whose filter support lies inside the section. Residuals up to
/// [`ORDER_TOL`] relative to the image scale count as zero.
pub fn balance_order(b: &FilterBank, q_max: usize) -> Result<usize> {
    balance_order_tol(b, q_max, ORDER_TOL)
}

/// [`balance_order`] with relative residuals up to `tol` counted as zero.
pub fn balance_order_tol(b: &FilterBank, q_max: usize, tol: f64) -> Result<usize> {
    if q_max < 1 {
        return Err(AnalysisError::InvalidOrder(q_max));
    }
    Ok((0..q_max).take_while(|&k| balanced_at(b, k, tol)).count())
}
