//! Highpass completion by Householder QR.

use nalgebra::DMatrix;

use msf_lpoly::CausalMatrixFilter;

use crate::{check_structure, RecoverError, Result};

/// Threshold on `|R_ii|` below which the constraint matrix counts as rank deficient.
pub const RANK_TOL: f64 = 1e-10;

/// The `8×6` matrix whose columns are the rows of `[C_0 C_1 C_2 C_3]`,
/// `[C_2 C_3 0 0]` and `[0 0 C_0 C_1]`.
fn constraint_matrix(c: &CausalMatrixFilter) -> DMatrix<f64> {
    let t = c.taps();
    let z = DMatrix::zeros(2, 2);
    let blocks: [[&DMatrix<f64>; 4]; 3] = [
        [&t[0], &t[1], &t[2], &t[3]],
        [&t[2], &t[3], &z, &z],
        [&z, &z, &t[0], &t[1]],
    ];
    let mut m = DMatrix::zeros(8, 6);
    for (g, row) in blocks.iter().enumerate() {
        for (k, b) in row.iter().enumerate() {
            for p in 0..2 {
                for q in 0..2 {
                    m[(2 * k + q, 2 * g + p)] = b[(p, q)];
                }
            }
        }
    }
    m
}

/// Full `8×8` orthogonal `Q` and `8×6` upper-triangular `R` of the constraint
/// matrix, with the diagonal of `R` made nonnegative.
pub fn qr_factor(lowpass: &CausalMatrixFilter) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    check_structure(lowpass)?;
    let m = constraint_matrix(lowpass);
    let mut square = DMatrix::zeros(8, 8);
    square.view_mut((0, 0), (8, 6)).copy_from(&m);
    let qr = square.qr();
    let mut q = qr.q();
    let mut r = qr.r().columns(0, 6).into_owned();
    for i in 0..6 {
        if r[(i, i)] < 0.0 {
            q.column_mut(i).neg_mut();
            r.row_mut(i).neg_mut();
        }
    }
    Ok((q, r))
}

/// Highpass taps completing `lowpass` to an orthogonal four-tap bank.
///
/// Columns 7 and 8 of `Q` from [`qr_factor`] span the complement of the
/// lowpass shift constraints. Their remaining 2×2 orthogonal freedom is fixed
/// by the orthogonal Procrustes fit to the template `F_k = (−1)^k C_{3−k} U`,
/// `U = antidiag(1, 1)`.
pub fn complete_qr(lowpass: &CausalMatrixFilter) -> Result<CausalMatrixFilter> {
    let (q, r) = qr_factor(lowpass)?;
    for i in 0..6 {
        if r[(i, i)].abs() <= RANK_TOL {
            return Err(RecoverError::RankDeficient {
                index: i,
                value: r[(i, i)].abs(),
                tol: RANK_TOL,
            });
        }
    }
    let flat = q.columns(6, 2).transpose();
    let u = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
    let template: Vec<DMatrix<f64>> = (0..4)
        .map(|k| {
            let s = if k % 2 == 0 { 1.0 } else { -1.0 };
            &lowpass.taps()[3 - k] * &u * s
        })
        .collect();
    let target = CausalMatrixFilter::new(2, template)?.flatten();
    let svd = (&target * flat.transpose()).svd(true, true);
    let v = svd.u.expect("requested") * svd.v_t.expect("requested");
    Ok(CausalMatrixFilter::from_flat(2, &(v * flat))?)
}
