use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet size M = {0} out of range (1..=254)")]
    InvalidAlphabet(u32),
    #[error("digit {digit} exceeds M = {m}")]
    DigitOutOfRange { digit: u32, m: u8 },
    #[error("alphabet mismatch: M = {0} vs M = {1}")]
    AlphabetMismatch(u8, u8),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("bracket does not straddle the target value")]
    BracketDoesNotStraddle,
    #[error("precision exhausted after {bits} bits: {context}")]
    PrecisionExhausted { bits: u32, context: String },
    #[error("roundtrip mismatch at digit {index}: expected prefix {expected}, got {found}")]
    RoundtripMismatch {
        index: usize,
        expected: String,
        found: String,
    },
    #[error("word violates the run constraint: {0}")]
    RunConstraint(String),
    #[error("enumeration cap {cap} exceeded (needed {needed})")]
    CapExceeded { cap: u64, needed: String },
    #[error("ordering violated: {0}")]
    Ordering(String),
    #[error("uncertified: {0}")]
    Uncertified(String),
    #[error("config: {0}")]
    Config(String),
}

impl Error {
    /// True for failures that more bits (or a looser tolerance) could cure.
    pub fn is_precision(&self) -> bool {
        matches!(self, Error::PrecisionExhausted { .. } | Error::Uncertified(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
