use thiserror::Error;

/// Errors shared across the whole crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("bad context: {0}")]
    BadContext(String),

    #[error("context mismatch between operands")]
    ContextMismatch,

    #[error("bad word: {0}")]
    BadWord(String),

    #[error("first word is not an initial factor of the second")]
    NotAnInitialFactor,

    #[error("words are equal; no separating suffix exists")]
    EqualWords,

    #[error("level {level} is below the required minimum {required}")]
    LevelTooSmall { level: usize, required: usize },

    #[error("enumeration of {needed} elements exceeds the cap {cap}")]
    EnumerationCapExceeded { needed: u128, cap: u64 },

    #[error("code is not joinless")]
    NotJoinless,

    #[error("word is not an element of the code")]
    ElementNotInCode,

    #[error("coordinate {coord} out of range for dimension {dim}")]
    BadCoordinate { coord: usize, dim: usize },

    #[error("table keys are not an initial-factor code")]
    DomainNotAntichain,

    #[error("table entries disagree on a common extension of two keys")]
    InconsistentTable,

    #[error("code element lies outside the domain of the table")]
    OutsideDomain,

    #[error("inverse image requested for a set violating the length condition on image values")]
    StarConditionViolated,

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("generator set must contain at least one generator")]
    EmptyGeneratorSet,

    #[error("generator `{0}` does not have a joinless domain code")]
    GeneratorNotRm1(String),

    #[error("operation undefined for the zero morphism")]
    ZeroMorphism,

    #[error("operation requires dimension at least 2")]
    DimensionTooSmall,

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("circuits have different input or output arities")]
    ArityMismatch,

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
