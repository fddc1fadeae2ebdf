//! Orthogonal matrix filter banks.
//!
//! A [`FilterBank`] pairs a lowpass [`CausalMatrixFilter`] (taps `C_k`) with an
//! optional highpass filter (taps `D_k`). The crate provides the SA4 family,
//! embedded literature banks, the Haar balancing prefilter, and a JSON bank
//! document format.
//!
//! ```
//! use msf_filters::{builtin, sa4_family};
//!
//! let sa4 = sa4_family(4.0 + 15f64.sqrt()).unwrap();
//! assert!(sa4.is_orthogonal(1e-12));
//! assert_eq!(builtin("ghm").unwrap().r(), 2);
//! ```

mod bank;
mod builtin;
mod document;

pub use bank::{FilterBank, PrefilterPair};
pub use builtin::{builtin, sa4_family, BUILTIN_NAMES, SA4_T};
pub use document::{deserialize, serialize, BankDocument};
pub use msf_lpoly::CausalMatrixFilter;

use thiserror::Error;

/// Errors raised by bank constructors and documents.
#[derive(Debug, Error)]
pub enum FilterError {
    /// The SA4 parameter `t` was zero.
    #[error("sa4 parameter t must be nonzero")]
    ZeroParameter,
    /// A builtin name was not recognised.
    #[error("unknown bank name `{0}`")]
    UnknownName(String),
    /// Lowpass and highpass disagree in multiplicity or tap count.
    #[error("lowpass has {low_taps} taps of size {low_r}, highpass has {high_taps} taps of size {high_r}")]
    Mismatch {
        low_r: usize,
        low_taps: usize,
        high_r: usize,
        high_taps: usize,
    },
    /// A prefilter matrix is not orthogonal.
    #[error("prefilter is not orthogonal (defect {0:e})")]
    NotOrthogonal(f64),
    /// A tap or prefilter has the wrong shape.
    #[error(transparent)]
    Shape(#[from] msf_lpoly::LpolyError),
    /// The bank document could not be parsed.
    #[error("malformed bank document: {0}")]
    Document(#[from] serde_json::Error),
}

/// Convenience alias for results in this crate.
pub type Result<T> = std::result::Result<T, FilterError>;
