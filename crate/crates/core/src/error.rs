use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet size {0} is below 2")]
    AlphabetTooSmall(u32),
    #[error("alphabet size {0} exceeds the supported maximum of 256")]
    AlphabetTooLarge(u32),
    #[error("symbol {symbol} is not below the alphabet size {q}")]
    SymbolOutOfRange { symbol: u32, q: u32 },
    #[error("character {ch:?} at position {pos} is not a symbol of the {q}-ary alphabet")]
    BadSymbolText { ch: char, pos: usize, q: u32 },
    #[error("alphabet mismatch: expected {expected}, found {found}")]
    AlphabetMismatch { expected: u32, found: u32 },

    #[error("request of length {length} would push the Kraft sum above 1")]
    KraftExceeded { length: usize },

    #[error("assembly error at line {line}, column {column}: {message}")]
    Assembly { line: usize, column: usize, message: String },
    #[error("invalid machine: {0}")]
    InvalidMachine(String),
    #[error("malformed header: {0}")]
    MalformedHeader(String),

    #[error("syntax error at symbol {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("proof rejected at step {step}: {reason}")]
    ProofRejected { step: usize, reason: String },
    #[error("{0}")]
    Limit(String),

    #[error("scatter: {0}")]
    Scatter(String),
    #[error("adapter construction failed: {0}")]
    Adapter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
