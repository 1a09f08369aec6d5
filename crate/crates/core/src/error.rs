use thiserror::Error;

/// Errors produced by index construction, queries and serialization.
#[derive(Debug, Error)]
pub enum Error {
    /// Input text violates a format precondition (bad terminator, reserved
    /// symbol code, symbol out of alphabet range, ...).
    #[error("input format: {0}")]
    InputFormat(String),

    /// A structural invariant did not hold (not a permutation, unsorted
    /// head positions, slot collision during induction, ...).
    #[error("invariant violation: {0}")]
    Invariant(String),

    /// An index argument was outside the valid range.
    #[error("out of range: {0}")]
    Range(String),

    /// An operation was called outside its contract (e.g. contracting an
    /// interval with match length zero).
    #[error("contract violation: {0}")]
    Contract(String),

    /// A document contains a symbol that is missing from the (augmented)
    /// reference; the caller must re-augment before retrying.
    #[error("augmentation: symbol code {0} does not occur in the reference")]
    Augmentation(u8),

    /// Malformed textual input (FASTA or raw documents).
    #[error("ingest error at line {line}: {msg}")]
    Ingest { line: usize, msg: String },

    /// Malformed binary or TSV payload.
    #[error("decode error: {0}")]
    Decode(String),

    /// Bad request at the library surface (empty collection, oversized
    /// validation input, ...).
    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
