use thiserror::Error;

/// Errors shared by all index structures.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A requested string, extension or arc does not occur in the text.
    #[error("not found")]
    NotFound,
    /// Operation requires a nonempty string but the descriptor is empty.
    #[error("empty descriptor")]
    Empty,
    /// Symbol outside the index alphabet (or the terminator where it is not allowed).
    #[error("invalid symbol {0}")]
    InvalidSymbol(u16),
    /// Rank/select/tree argument out of range.
    #[error("{0} out of range")]
    OutOfRange(&'static str),
    /// Query on the root that has no parent or suffix link.
    #[error("root has no {0}")]
    Root(&'static str),
    /// Node is not flagged as a maximal repeat.
    #[error("node is not a maximal repeat")]
    Unmarked,
    /// Descriptor fails a consistency check.
    #[error("corrupt descriptor: {0}")]
    CorruptDescriptor(&'static str),
    /// Input text rejected.
    #[error("invalid input: {0}")]
    InvalidInput(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
