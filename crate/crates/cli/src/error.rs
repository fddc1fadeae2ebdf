//! Error categories and their exit codes.

use thiserror::Error;

/// A failed command, classified by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Invalid flags or argument values. Exit code 1.
    #[error("usage error: {0}")]
    Usage(String),
    /// A numeric failure such as a non-positive-definite pivot. Exit code 2.
    #[error("numeric failure: {0}")]
    Numeric(String),
    /// Unreadable, unwritable or malformed files. Exit code 3.
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    /// Process exit code of this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numeric(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<msf_filters::FilterError> for CliError {
    fn from(e: msf_filters::FilterError) -> Self {
        use msf_filters::FilterError as E;
        match e {
            E::ZeroParameter | E::UnknownName(_) | E::NotOrthogonal(_) => CliError::Usage(e.to_string()),
            E::Mismatch { .. } | E::Shape(_) | E::Document(_) => CliError::Io(e.to_string()),
        }
    }
}

impl From<msf_lpoly::LpolyError> for CliError {
    fn from(e: msf_lpoly::LpolyError) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<msf_bauer::BauerError> for CliError {
    fn from(e: msf_bauer::BauerError) -> Self {
        use msf_bauer::BauerError as E;
        match e {
            E::SizeTooSmall { .. } => CliError::Usage(e.to_string()),
            E::NotPositiveDefinite { .. } | E::TooLarge { .. } | E::Shape(_) => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<msf_recover::RecoverError> for CliError {
    fn from(e: msf_recover::RecoverError) -> Self {
        use msf_recover::RecoverError as E;
        match e {
            E::Structure { .. } | E::ShapeMismatch => CliError::Usage(e.to_string()),
            E::Domain { .. } | E::RankDeficient { .. } | E::Bank(_) => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<msf_analysis::AnalysisError> for CliError {
    fn from(e: msf_analysis::AnalysisError) -> Self {
        use msf_analysis::AnalysisError as E;
        match e {
            E::RhoOutOfRange(_) | E::MissingHighpass(_) | E::GridTooSmall(_) | E::InvalidOrder(_) => {
                CliError::Usage(e.to_string())
            }
            E::TooFewTaps(_) | E::PrefilterMismatch { .. } => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<msf_mwt::MwtError> for CliError {
    fn from(e: msf_mwt::MwtError) -> Self {
        use msf_mwt::MwtError as E;
        match e {
            E::Io(_) | E::Parse(_) => CliError::Io(e.to_string()),
            E::InfinitePsnr => CliError::Numeric(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Result alias for command handlers.
pub type Result<T> = std::result::Result<T, CliError>;
