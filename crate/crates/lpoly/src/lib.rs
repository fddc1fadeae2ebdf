//! Matrix Laurent polynomials with real `r×r` coefficients.
//!
//! A [`MatrixLaurent`] stores the coefficients of `A(z) = Σ_k A_k z^k` over a
//! contiguous degree window. [`CausalMatrixFilter`] is the tap form
//! `H(z) = Σ_k C_k z^{-k}` used by filter banks, and [`ProductFilter`] holds the
//! nonnegative half of `P(z) = H(z) H*(z)`.
//!
//! ```
//! use msf_lpoly::MatrixLaurent;
//! use nalgebra::DMatrix;
//!
//! let one = DMatrix::from_element(1, 1, 1.0);
//! let a = MatrixLaurent::new(1, -1, vec![one.clone(), one.clone()]).unwrap();
//! let p = a.multiply(&a.adjoint()).unwrap();
//! assert_eq!(p.kmin(), -1);
//! assert_eq!(p.coeff(0)[(0, 0)], 2.0);
//! ```

mod laurent;
mod product;

pub use laurent::{CausalMatrixFilter, MatrixLaurent};
pub use product::{product_filter, ProductFilter};

use thiserror::Error;

/// Errors raised by polynomial constructors and arithmetic.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum LpolyError {
    /// Two operands have different multiplicities.
    #[error("multiplicity mismatch: {left} vs {right}")]
    MultiplicityMismatch { left: usize, right: usize },
    /// A coefficient matrix is not `r×r`.
    #[error("coefficient {index} has shape {rows}x{cols}, expected {r}x{r}")]
    Shape {
        index: usize,
        rows: usize,
        cols: usize,
        r: usize,
    },
    /// No coefficients were supplied.
    #[error("coefficient sequence is empty")]
    Empty,
    /// Multiplicity zero was requested.
    #[error("multiplicity must be positive")]
    ZeroMultiplicity,
}

/// Convenience alias for results in this crate.
pub type Result<T> = std::result::Result<T, LpolyError>;

/// Default absolute tolerance for equality and structural predicates.
pub const DEFAULT_TOL: f64 = 1e-12;

pub(crate) fn check_shapes(r: usize, mats: &[nalgebra::DMatrix<f64>]) -> Result<()> {
    if r == 0 {
        return Err(LpolyError::ZeroMultiplicity);
    }
    if mats.is_empty() {
        return Err(LpolyError::Empty);
    }
    for (index, m) in mats.iter().enumerate() {
        if m.nrows() != r || m.ncols() != r {
            return Err(LpolyError::Shape {
                index,
                rows: m.nrows(),
                cols: m.ncols(),
                r,
            });
        }
    }
    Ok(())
}

/// Largest absolute entry of a real matrix, `0` for an empty matrix.
pub fn max_abs(m: &nalgebra::DMatrix<f64>) -> f64 {
    m.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
}
