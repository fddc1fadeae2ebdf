//! Bauer's method for matrix spectral factorization.
//!
//! The product filter `P(z)` generates the banded block Toeplitz matrix
//! `T^{(f)}` with blocks `T_ij = P_{j−i}`. Its lower Cholesky factor is computed
//! row by row inside the band, and the last block row of `L^{(f)}` is read off
//! as the approximate causal factor `C_k^{(f)} = L_{f−1, f−1−k}`.
//!
//! The factor of `T^{(f)}` is the leading block of the factor of `T^{(f+1)}`,
//! so a single forward pass ([`CholeskyStream`]) produces the factor for every
//! size up to the largest one requested.
//!
//! ```
//! use msf_bauer::spectral_factor;
//! use msf_lpoly::ProductFilter;
//! use nalgebra::DMatrix;
//!
//! let p = ProductFilter::new(1, vec![DMatrix::from_element(1, 1, 1.0), DMatrix::from_element(1, 1, 0.5)]).unwrap();
//! let s = spectral_factor(&p, 50).unwrap();
//! assert!((s.taps.taps()[0][(0, 0)] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-2);
//! ```

mod factor;
mod stream;

pub use factor::{
    cholesky_banded, residual, spectral_factor, sweep, toeplitz_singular_values, BandedBlockToeplitz, BandedFactor,
    SpectralFactor, SweepRecord, DENSE_LIMIT,
};
pub use stream::{CholeskyStream, PIVOT_REL_TOL};

use thiserror::Error;

/// Errors raised by the factorization.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum BauerError {
    /// A pivot block of the Cholesky recursion is not positive definite.
    #[error("pivot block at block row {block_row} is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { block_row: usize, min_eigenvalue: f64 },
    /// The requested size is smaller than the band requires.
    #[error("size f = {f} is below the minimum n + 1 = {min}")]
    SizeTooSmall { f: usize, min: usize },
    /// The dense matrix would exceed the size guard.
    #[error("dense Toeplitz matrix of order {order} exceeds the limit {limit}")]
    TooLarge { order: usize, limit: usize },
    /// The product filter and factor shapes disagree.
    #[error(transparent)]
    Shape(#[from] msf_lpoly::LpolyError),
}

/// Convenience alias for results in this crate.
pub type Result<T> = std::result::Result<T, BauerError>;
