//! Multiwavelet transform engine.
//!
//! * [`prefilter`] / [`postfilter`] vectorize a scalar signal through an
//!   orthogonal matrix `Q` and back.
//! * [`analyze`] / [`synthesize`] run the periodic multi-level 1D transform on
//!   the vector stream; [`analyze2d`] / [`synthesize2d`] the separable 2D one.
//! * [`hard_threshold`] and [`hard_threshold2d`] zero small detail vectors.
//! * [`psnr`], [`mae`], [`test_signal`], PGM and CSV I/O, and the seeded
//!   experiment helpers in [`experiments`].

pub mod experiments;
mod image;
mod io;
mod metrics;
mod prefilter;
mod signals;
mod threshold;
mod transform;

pub use image::{analyze2d, synthesize2d, GrayImage, Tree2d};
pub use io::{read_csv, read_pgm, write_csv, write_pgm, PgmFormat};
pub use metrics::{mae, psnr};
pub use prefilter::{postfilter, prefilter, VectorSignal};
pub use signals::{test_signal, SIGNAL_NAMES};
pub use threshold::{estimate_sigma, estimate_sigma2d, hard_threshold, hard_threshold2d, level_threshold};
pub use transform::{
    analyze, analyze_level, analyze_signal, prefilter_label, synthesize, synthesize_level, synthesize_signal,
    TransformTree, ORTHO_WARN,
};

use thiserror::Error;

/// Errors raised by the transform engine.
#[derive(Debug, Error)]
pub enum MwtError {
    /// A scalar signal whose length is not a multiple of the multiplicity.
    #[error("signal length {len} is not a multiple of {r}")]
    Length { len: usize, r: usize },
    /// The vector length does not admit the requested number of levels.
    #[error("{blocks} vectors cannot be halved {levels} times")]
    NotDivisible { blocks: usize, levels: usize },
    /// A 1D transform with zero levels.
    #[error("at least one level is required")]
    ZeroLevels,
    /// Multiplicities or sizes of the operands disagree.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// Unknown test-signal label.
    #[error("unknown test signal `{0}`")]
    UnknownSignal(String),
    /// Test-signal length is not a power of two.
    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    /// PSNR of identical images is infinite.
    #[error("images are identical; PSNR is infinite")]
    InfinitePsnr,
    /// Negative threshold scale.
    #[error("sigma must be nonnegative, got {0}")]
    NegativeSigma(f64),
    /// Malformed PGM or CSV content.
    #[error("parse error: {0}")]
    Parse(String),
    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Convenience alias for results in this crate.
pub type Result<T> = std::result::Result<T, MwtError>;
