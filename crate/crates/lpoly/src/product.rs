//! Product filters `P(z) = H(z) H*(z)`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{check_shapes, max_abs, CausalMatrixFilter, MatrixLaurent, Result};

/// Symmetric Laurent polynomial stored by its nonnegative half `P_0..P_n`.
///
/// The negative coefficients are `P_{-k} = P_kᵀ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductFilter {
    r: usize,
    half: Vec<DMatrix<f64>>,
}

impl ProductFilter {
    /// Builds a product filter from `P_0..P_n`. `P_0` is symmetrized.
    pub fn new(r: usize, half: Vec<DMatrix<f64>>) -> Result<Self> {
        check_shapes(r, &half)?;
        let mut half = half;
        let p0 = &half[0];
        half[0] = (p0 + p0.transpose()) * 0.5;
        Ok(Self { r, half })
    }

    /// Multiplicity `r`.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Half-width `n`.
    pub fn n(&self) -> usize {
        self.half.len() - 1
    }

    /// Stored coefficients `P_0..P_n`.
    pub fn half(&self) -> &[DMatrix<f64>] {
        &self.half
    }

    /// Coefficient of `z^k` for any integer `k`.
    pub fn coeff(&self, k: i64) -> DMatrix<f64> {
        let m = k.unsigned_abs() as usize;
        if m >= self.half.len() {
            DMatrix::zeros(self.r, self.r)
        } else if k >= 0 {
            self.half[m].clone()
        } else {
            self.half[m].transpose()
        }
    }

    /// The full polynomial `Σ_{k=-n}^{n} P_k z^k`.
    pub fn to_laurent(&self) -> MatrixLaurent {
        let n = self.n() as i64;
        let coeffs = (-n..=n).map(|k| self.coeff(k)).collect();
        MatrixLaurent::new(self.r, -n, coeffs).expect("shapes validated at construction")
    }

    /// `P(e^{iω})`.
    pub fn evaluate(&self, omega: f64) -> DMatrix<Complex64> {
        self.to_laurent().evaluate(omega)
    }

    /// True iff `|P_0 − I| ≤ tol` and `|P_{2ℓ}| ≤ tol` for every `ℓ ≠ 0`.
    pub fn is_halfband(&self, tol: f64) -> bool {
        let eye = DMatrix::<f64>::identity(self.r, self.r);
        if max_abs(&(&self.half[0] - eye)) > tol {
            return false;
        }
        self.half
            .iter()
            .enumerate()
            .skip(2)
            .step_by(2)
            .all(|(_, p)| max_abs(p) <= tol)
    }
}

/// `P_k = Σ_j C_j C_{j+k}ᵀ`, the coefficients of `H(z) H*(z)`.
pub fn product_filter(h: &CausalMatrixFilter) -> ProductFilter {
    let taps = h.taps();
    let r = h.r();
    let half = (0..taps.len())
        .map(|k| {
            let mut acc = DMatrix::zeros(r, r);
            for j in 0..taps.len() - k {
                acc += &taps[j] * taps[j + k].transpose();
            }
            acc
        })
        .collect();
    ProductFilter::new(r, half).expect("taps already validated")
}
