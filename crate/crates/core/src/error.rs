//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unphysical Bloch vector: |r| = {norm} exceeds 1")]
    UnphysicalBlochVector { norm: f64 },

    #[error("measurement direction must be a unit vector, got |n| = {norm}")]
    NonUnitDirection { norm: f64 },

    #[error("unknown outcome label {outcome} for a POVM with {outcomes} outcomes")]
    UnknownOutcome { outcome: usize, outcomes: usize },

    #[error("invalid qubit state: {0}")]
    InvalidState(String),

    #[error("invalid observable: {0}")]
    InvalidObservable(String),

    #[error("invalid POVM: {0}")]
    InvalidPovm(String),

    #[error("invalid collusion box: {0}")]
    InvalidBox(String),

    #[error("invalid quantum strategy: {0}")]
    InvalidStrategy(String),

    #[error("secret key must contain at least one round")]
    EmptyKey,

    #[error("serial number {0:?} is already registered")]
    DuplicateSerial(String),

    #[error("serial number {0:?} is not registered")]
    UnknownSerial(String),

    #[error("key has {key} rounds but the banknote has {note}")]
    KeyLengthMismatch { key: usize, note: usize },

    #[error("banknote {0:?} was already consumed by a verification")]
    NoteConsumed(String),

    #[error("branch index {branch} out of range for a bank with {branches} branches")]
    InvalidBranch { branch: usize, branches: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("exact enumeration limited to n <= {max}, got n = {n}")]
    EnumerationTooLarge { n: usize, max: usize },

    #[error("empty sweep range")]
    EmptyRange,

    #[error("unsupported schema: expected {expected:?}, got {got:?}")]
    SchemaMismatch { expected: String, got: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
