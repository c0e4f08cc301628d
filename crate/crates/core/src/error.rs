use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,
    #[error("duplicate alphabet token {0:?}")]
    DuplicateToken(String),
    #[error("alphabet has {0} symbols; at most 256 are supported")]
    AlphabetTooLarge(usize),
    #[error("unknown token {0:?}")]
    UnknownToken(String),
    #[error("symbol index {symbol} is outside an alphabet of size {size}")]
    SymbolOutOfRange { symbol: usize, size: usize },
    #[error("forbidden words must be nonempty")]
    EmptyForbiddenWord,
    #[error("edge refers to unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("the presented shift is empty (graph trims to nothing)")]
    EmptyShift,
    #[error("presentation too large: {0}")]
    TooLarge(String),
    #[error("word {0} is not in the language")]
    WordNotAllowed(String),
    #[error("window does not cover index {0}")]
    NotCovered(i64),
    #[error("pseudo-orbit has no entries")]
    EmptyPseudoOrbit,
    #[error("pseudo-orbit entry {index} has length {len}; expected {expected}")]
    BadEntryLength { index: i64, len: usize, expected: usize },
    #[error("entry radius {radius} cannot certify delta exponent {delta} (need radius > delta)")]
    RadiusTooSmall { radius: usize, delta: u32 },
    #[error("pseudo-orbit breaks at index {index}: shifted entry and successor differ at offset {offset}")]
    PseudoOrbitMismatch { index: i64, offset: i64 },
    #[error("pseudo-orbit entry {index} is not in the language")]
    EntryNotAllowed { index: i64 },
    #[error("no bridge of length {n} joins {u} to {v}")]
    BridgeFailure { u: String, n: usize, v: String },
    #[error("no replacement of {w} joins {u} to {v}")]
    QftBridgeFailure { u: String, w: String, v: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("search budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("value {0} is outside the unit interval")]
    OutOfDomain(f64),
    #[error("unknown scenario {0:?}")]
    UnknownScenario(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Invalid(err.to_string())
    }
}
