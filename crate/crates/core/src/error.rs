use thiserror::Error;

/// Errors produced by validation and evaluation across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet `{name}` must have at least one symbol")]
    EmptyAlphabet { name: String },

    #[error("alphabet `{name}` has {size} symbols; at most {max} are supported")]
    AlphabetTooLarge { name: String, size: usize, max: usize },

    #[error("alphabet `{name}` repeats symbol `{symbol}`")]
    DuplicateSymbol { name: String, symbol: String },

    #[error("expected {expected} probability entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("probabilities must be nonnegative; found {value}")]
    NegativeProbability { value: f64 },

    #[error("pmf sums to {sum}; outside tolerance {tol} of 1")]
    NotNormalized { sum: f64, tol: f64 },

    #[error("conditional slice at {context} sums to {sum}; outside tolerance {tol} of 1")]
    SliceNotNormalized { context: String, sum: f64, tol: f64 },

    #[error("variable groups must be pairwise disjoint")]
    OverlappingGroups,

    #[error("variable index {index} out of range for {nvars} variables")]
    UnknownVariable { index: usize, nvars: usize },

    #[error("sequence lengths differ: {first} vs {other}")]
    LengthMismatch { first: usize, other: usize },

    #[error("symbol index {symbol} out of range for variable {var} of size {size}")]
    SymbolOutOfRange { var: usize, symbol: usize, size: usize },

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("{0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("exhaustive-decoding cap exceeded: {0}")]
    CapExceeded(String),
}

impl Error {
    /// True for the decoder-size cap, which the CLI maps to its own exit code.
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, Error::CapExceeded(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
