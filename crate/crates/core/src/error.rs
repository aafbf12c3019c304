use thiserror::Error;

/// Errors raised by state construction and the correlation measures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QcorrError {
    #[error("invalid layout: {0}")]
    Layout(String),

    #[error("total dimension {dim} exceeds the supported maximum of {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    /// A value violates a named invariant (`trace`, `hermiticity`, `positivity`,
    /// `norm`, `unitarity`, `shape`, ...).
    #[error("invariant `{invariant}` violated: {detail}")]
    Invariant {
        invariant: &'static str,
        detail: String,
    },

    #[error("unknown subsystem label `{0}`")]
    UnknownLabel(String),

    #[error("kind mismatch: {0}")]
    KindMismatch(String),

    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl QcorrError {
    pub(crate) fn invariant(invariant: &'static str, detail: impl Into<String>) -> Self {
        QcorrError::Invariant {
            invariant,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, QcorrError>;
