use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("relation dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("relations on {0} states are not supported (maximum is 64)")]
    DimensionTooLarge(usize),
    #[error("alphabets differ")]
    AlphabetMismatch,
    #[error("unknown letter '{0}'")]
    UnknownLetter(char),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("triple has an empty word component")]
    EmptyWordComponent,
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: undeclared state {state}")]
    UndeclaredState { line: usize, state: String },
    #[error("line {line}: undeclared letter '{letter}'")]
    UndeclaredLetter { line: usize, letter: String },
    #[error("unknown element '{0}'")]
    UnknownElement(String),
    #[error("element index {0} out of range")]
    ElementOutOfRange(usize),
    #[error("multiplication table is not associative: ({0}{1}){2} != {0}({1}{2})")]
    NotAssociative(String, String, String),
    #[error("generated semigroup exceeded the capacity of {0} elements")]
    CapacityExceeded(usize),
    #[error("pair ({0}, {1}) is not in the relation of the term")]
    PairNotPresent(usize, usize),
    #[error("certificate extraction failed: {0}")]
    DecompositionFailed(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
