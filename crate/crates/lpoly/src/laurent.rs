//! Laurent polynomial storage and arithmetic.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{check_shapes, max_abs, LpolyError, Result};

/// `A(z) = Σ_{k=kmin}^{kmax} A_k z^k` with real `r×r` coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixLaurent {
    r: usize,
    kmin: i64,
    coeffs: Vec<DMatrix<f64>>,
}

impl MatrixLaurent {
    /// Builds a polynomial whose `j`-th coefficient multiplies `z^{kmin+j}`.
    pub fn new(r: usize, kmin: i64, coeffs: Vec<DMatrix<f64>>) -> Result<Self> {
        check_shapes(r, &coeffs)?;
        Ok(Self { r, kmin, coeffs })
    }

    /// The constant polynomial `I`.
    pub fn identity(r: usize) -> Self {
        Self {
            r,
            kmin: 0,
            coeffs: vec![DMatrix::identity(r, r)],
        }
    }

    /// The zero polynomial with a single zero coefficient at degree 0.
    pub fn zero(r: usize) -> Self {
        Self {
            r,
            kmin: 0,
            coeffs: vec![DMatrix::zeros(r, r)],
        }
    }

    /// Multiplicity `r`.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Lowest stored degree.
    pub fn kmin(&self) -> i64 {
        self.kmin
    }

    /// Highest stored degree.
    pub fn kmax(&self) -> i64 {
        self.kmin + self.coeffs.len() as i64 - 1
    }

    /// Stored coefficients, lowest degree first.
    pub fn coeffs(&self) -> &[DMatrix<f64>] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero outside the stored window.
    pub fn coeff(&self, k: i64) -> DMatrix<f64> {
        if k < self.kmin || k > self.kmax() {
            DMatrix::zeros(self.r, self.r)
        } else {
            self.coeffs[(k - self.kmin) as usize].clone()
        }
    }

    /// `A*(z) = Aᵀ(1/z)`: the coefficient of `z^{-k}` is `A_kᵀ`.
    pub fn adjoint(&self) -> Self {
        let coeffs = self.coeffs.iter().rev().map(|c| c.transpose()).collect();
        Self {
            r: self.r,
            kmin: -self.kmax(),
            coeffs,
        }
    }

    /// Cauchy product `A(z)B(z)`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.same_r(other)?;
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        let mut coeffs = vec![DMatrix::zeros(self.r, self.r); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Ok(Self {
            r: self.r,
            kmin: self.kmin + other.kmin,
            coeffs,
        })
    }

    /// Coefficientwise sum over the union of both degree windows.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, 1.0)
    }

    /// Coefficientwise difference `A − B`.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, -1.0)
    }

    /// Multiplies every coefficient by `s`.
    pub fn scale(&self, s: f64) -> Self {
        Self {
            r: self.r,
            kmin: self.kmin,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// `A(e^{iω}) = Σ_k A_k e^{ikω}`.
    pub fn evaluate(&self, omega: f64) -> DMatrix<Complex64> {
        let mut out = DMatrix::from_element(self.r, self.r, Complex64::new(0.0, 0.0));
        for (j, c) in self.coeffs.iter().enumerate() {
            let k = (self.kmin + j as i64) as f64;
            let w = Complex64::from_polar(1.0, k * omega);
            out += c.map(|v| w * v);
        }
        out
    }

    /// Removes leading and trailing coefficients whose entries are all within `tol` of zero.
    /// The zero polynomial trims to a single zero coefficient at degree 0.
    pub fn trim(&self, tol: f64) -> Self {
        let nz = |c: &DMatrix<f64>| max_abs(c) > tol;
        let first = self.coeffs.iter().position(nz);
        match first {
            None => Self::zero(self.r),
            Some(first) => {
                let last = self.coeffs.iter().rposition(nz).unwrap_or(first);
                Self {
                    r: self.r,
                    kmin: self.kmin + first as i64,
                    coeffs: self.coeffs[first..=last].to_vec(),
                }
            }
        }
    }

    /// Largest absolute coefficient entry of `A − B` over both windows.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        let d = self.sub(other)?;
        Ok(d.coeffs.iter().map(max_abs).fold(0.0, f64::max))
    }

    /// Equality of trimmed forms entrywise within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.r == other.r && self.max_abs_diff(other).map(|d| d <= tol).unwrap_or(false)
    }

    fn same_r(&self, other: &Self) -> Result<()> {
        if self.r != other.r {
            return Err(LpolyError::MultiplicityMismatch {
                left: self.r,
                right: other.r,
            });
        }
        Ok(())
    }

    fn combine(&self, other: &Self, sign: f64) -> Result<Self> {
        self.same_r(other)?;
        let kmin = self.kmin.min(other.kmin);
        let kmax = self.kmax().max(other.kmax());
        let coeffs = (kmin..=kmax).map(|k| self.coeff(k) + other.coeff(k) * sign).collect();
        Ok(Self {
            r: self.r,
            kmin,
            coeffs,
        })
    }
}

/// Causal filter `H(z) = Σ_{k=0}^{n} C_k z^{-k}` with `r×r` taps.
#[derive(Debug, Clone, PartialEq)]
pub struct CausalMatrixFilter {
    r: usize,
    taps: Vec<DMatrix<f64>>,
}

impl CausalMatrixFilter {
    /// Validates that `taps` is nonempty and every tap is `r×r`.
    pub fn new(r: usize, taps: Vec<DMatrix<f64>>) -> Result<Self> {
        check_shapes(r, &taps)?;
        Ok(Self { r, taps })
    }

    /// Builds a filter from row-major tap arrays.
    pub fn from_rows(r: usize, taps: &[Vec<f64>]) -> Result<Self> {
        let mats = taps
            .iter()
            .enumerate()
            .map(|(index, t)| {
                if t.len() != r * r {
                    Err(LpolyError::Shape {
                        index,
                        rows: t.len() / r.max(1),
                        cols: r,
                        r,
                    })
                } else {
                    Ok(DMatrix::from_row_slice(r, r, t))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(r, mats)
    }

    /// Multiplicity `r`.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Degree `n`, one less than the tap count.
    pub fn n(&self) -> usize {
        self.taps.len() - 1
    }

    /// Taps `C_0..C_n`.
    pub fn taps(&self) -> &[DMatrix<f64>] {
        &self.taps
    }

    /// Tap `C_k`, zero outside `0..=n`.
    pub fn tap(&self, k: i64) -> DMatrix<f64> {
        if k < 0 || k as usize >= self.taps.len() {
            DMatrix::zeros(self.r, self.r)
        } else {
            self.taps[k as usize].clone()
        }
    }

    /// The polynomial `H(z)`, whose coefficient of `z^{-k}` is `C_k`.
    pub fn to_laurent(&self) -> MatrixLaurent {
        MatrixLaurent {
            r: self.r,
            kmin: -(self.n() as i64),
            coeffs: self.taps.iter().rev().cloned().collect(),
        }
    }

    /// Right multiplication of every tap by `u`.
    pub fn right_mul(&self, u: &DMatrix<f64>) -> Self {
        Self {
            r: self.r,
            taps: self.taps.iter().map(|c| c * u).collect(),
        }
    }

    /// `qᵀ C_k q` for every tap.
    pub fn conjugate(&self, q: &DMatrix<f64>) -> Self {
        Self {
            r: self.r,
            taps: self.taps.iter().map(|c| q.transpose() * c * q).collect(),
        }
    }

    /// Every tap multiplied by `s`.
    pub fn scale(&self, s: f64) -> Self {
        Self {
            r: self.r,
            taps: self.taps.iter().map(|c| c * s).collect(),
        }
    }

    /// The `r×(r(n+1))` block row `[C_0 | C_1 | … | C_n]`.
    pub fn flatten(&self) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(self.r, self.r * self.taps.len());
        for (k, c) in self.taps.iter().enumerate() {
            out.view_mut((0, k * self.r), (self.r, self.r)).copy_from(c);
        }
        out
    }

    /// Inverse of [`flatten`](Self::flatten).
    pub fn from_flat(r: usize, flat: &DMatrix<f64>) -> Result<Self> {
        if flat.nrows() != r || r == 0 || !flat.ncols().is_multiple_of(r) {
            return Err(LpolyError::Shape {
                index: 0,
                rows: flat.nrows(),
                cols: flat.ncols(),
                r,
            });
        }
        let taps = (0..flat.ncols() / r)
            .map(|k| flat.view((0, k * r), (r, r)).into_owned())
            .collect();
        Self::new(r, taps)
    }

    /// Largest absolute entry difference between two filters of equal shape.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.r != other.r {
            return Err(LpolyError::MultiplicityMismatch {
                left: self.r,
                right: other.r,
            });
        }
        let n = self.taps.len().max(other.taps.len()) as i64;
        Ok((0..n)
            .map(|k| max_abs(&(self.tap(k) - other.tap(k))))
            .fold(0.0, f64::max))
    }
}
