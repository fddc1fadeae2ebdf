//! Filter bank and prefilter types.

use nalgebra::DMatrix;

use msf_lpoly::{max_abs, CausalMatrixFilter};

use crate::{FilterError, Result};

/// Lowpass taps `C_k` with optional highpass taps `D_k` of multiplicity `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterBank {
    name: String,
    lowpass: CausalMatrixFilter,
    highpass: Option<CausalMatrixFilter>,
}

impl FilterBank {
    /// Validates that both filters share `r` and tap count.
    pub fn new(
        name: impl Into<String>,
        lowpass: CausalMatrixFilter,
        highpass: Option<CausalMatrixFilter>,
    ) -> Result<Self> {
        if let Some(h) = &highpass {
            if h.r() != lowpass.r() || h.taps().len() != lowpass.taps().len() {
                return Err(FilterError::Mismatch {
                    low_r: lowpass.r(),
                    low_taps: lowpass.taps().len(),
                    high_r: h.r(),
                    high_taps: h.taps().len(),
                });
            }
        }
        Ok(Self {
            name: name.into(),
            lowpass,
            highpass,
        })
    }

    /// Bank label.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Multiplicity `r`.
    pub fn r(&self) -> usize {
        self.lowpass.r()
    }

    /// Degree `n` of both filters.
    pub fn n(&self) -> usize {
        self.lowpass.n()
    }

    /// Lowpass filter.
    pub fn lowpass(&self) -> &CausalMatrixFilter {
        &self.lowpass
    }

    /// Highpass filter, if present.
    pub fn highpass(&self) -> Option<&CausalMatrixFilter> {
        self.highpass.as_ref()
    }

    /// Same bank with a new label.
    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Bank with every tap replaced by `qᵀ X_k q`.
    pub fn conjugated(&self, q: &DMatrix<f64>) -> Self {
        Self {
            name: self.name.clone(),
            lowpass: self.lowpass.conjugate(q),
            highpass: self.highpass.as_ref().map(|h| h.conjugate(q)),
        }
    }

    /// Bank with every highpass tap negated.
    pub fn with_negated_highpass(&self) -> Self {
        Self {
            name: self.name.clone(),
            lowpass: self.lowpass.clone(),
            highpass: self.highpass.as_ref().map(|h| h.scale(-1.0)),
        }
    }

    /// Largest deviation from the double-shift orthogonality conditions
    ///
    /// `Σ_k C_k C_{k+2ℓ}ᵀ = δ_{0ℓ} I`, `Σ_k D_k D_{k+2ℓ}ᵀ = δ_{0ℓ} I`,
    /// `Σ_k C_k D_{k+2ℓ}ᵀ = 0` over all shifts `ℓ`. Highpass terms are skipped
    /// when the highpass is absent.
    pub fn orthogonality_defect(&self) -> f64 {
        let c = &self.lowpass;
        let mut worst = shift_defect(c, c, true);
        if let Some(d) = &self.highpass {
            worst = worst.max(shift_defect(d, d, true));
            worst = worst.max(shift_defect(c, d, false));
        }
        worst
    }

    /// `orthogonality_defect() ≤ tol`.
    pub fn is_orthogonal(&self, tol: f64) -> bool {
        self.orthogonality_defect() <= tol
    }
}

fn shift_defect(x: &CausalMatrixFilter, y: &CausalMatrixFilter, unit: bool) -> f64 {
    let r = x.r();
    let len = x.taps().len() as i64;
    let lmax = (len + 1) / 2;
    let mut worst = 0.0_f64;
    for l in -lmax..=lmax {
        let mut acc = DMatrix::zeros(r, r);
        for k in 0..len {
            acc += x.tap(k) * y.tap(k + 2 * l).transpose();
        }
        if unit && l == 0 {
            acc -= DMatrix::<f64>::identity(r, r);
        }
        worst = worst.max(max_abs(&acc));
    }
    worst
}

/// Orthogonal prefilter `q` applied to each input vector before analysis;
/// `qᵀ` undoes it after synthesis.
#[derive(Debug, Clone, PartialEq)]
pub struct PrefilterPair {
    q: DMatrix<f64>,
}

impl PrefilterPair {
    /// Tolerance on `q qᵀ = I`.
    pub const ORTHO_TOL: f64 = 1e-14;

    /// Validates that `q` is square and orthogonal within [`Self::ORTHO_TOL`].
    pub fn new(q: DMatrix<f64>) -> Result<Self> {
        if q.nrows() != q.ncols() || q.nrows() == 0 {
            return Err(FilterError::Shape(msf_lpoly::LpolyError::Shape {
                index: 0,
                rows: q.nrows(),
                cols: q.ncols(),
                r: q.nrows(),
            }));
        }
        let n = q.nrows();
        let defect = max_abs(&(&q * q.transpose() - DMatrix::<f64>::identity(n, n)));
        if defect > Self::ORTHO_TOL {
            return Err(FilterError::NotOrthogonal(defect));
        }
        Ok(Self { q })
    }

    /// Haar balancing matrix `(1/√2)[[1, 1], [−1, 1]]`.
    pub fn haar() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            q: DMatrix::from_row_slice(2, 2, &[s, s, -s, s]),
        }
    }

    /// Identity prefilter of size `r`.
    pub fn identity(r: usize) -> Self {
        Self {
            q: DMatrix::identity(r, r),
        }
    }

    /// The matrix `q`.
    pub fn q(&self) -> &DMatrix<f64> {
        &self.q
    }

    /// Multiplicity handled by this prefilter.
    pub fn r(&self) -> usize {
        self.q.nrows()
    }
}
