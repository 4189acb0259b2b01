use thiserror::Error;

/// Errors raised by the orbit engine.
///
/// Everything except [`Error::Invariant`] is an input problem; `Invariant`
/// signals that two independent computations disagreed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed partition {text:?}: {reason}")]
    MalformedPartition { text: String, reason: String },

    #[error("malformed algebra {text:?}: {reason}")]
    MalformedAlgebra { text: String, reason: String },

    #[error("partitions have different sizes ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },

    #[error("partition [{partition}] is not admissible for {algebra}")]
    Inadmissible { partition: String, algebra: String },

    #[error("no {sign}-admissible partition of {size} exists")]
    NoAdmissible { size: usize, sign: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    /// True for disagreements between independent computations.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
