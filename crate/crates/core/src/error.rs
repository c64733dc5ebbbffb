use thiserror::Error;

/// Error type shared by every module of the crate.
///
/// The split matters for the CLI exit codes: bad or inconsistent *input*
/// surfaces as `Shape`, `Precondition`, `DataInconsistency`, ... (exit 2),
/// while `InternalConsistency` marks a violated theorem-level identity
/// (exit 1) that should never happen on geometrically meaningful data.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),

    #[error("not locally cyclic: {0}")]
    NotLocallyCyclic(String),

    #[error("ampleness undecidable: no ample-cone test classes supplied")]
    AmpleUndecidable,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("data inconsistency: {0}")]
    DataInconsistency(String),

    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    #[error("indeterminate: {0}")]
    Indeterminate(String),
}

impl Error {
    /// True for errors that indicate a broken theorem identity rather than
    /// bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::InternalConsistency(_))
    }
}
