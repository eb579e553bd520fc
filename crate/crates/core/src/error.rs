use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("negative exponent at position {0} is only allowed in a Laurent ring")]
    NegativeExponent(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("vector is not primitive (gcd of entries is {0})")]
    NotPrimitive(String),

    #[error("ideal is not saturated with respect to the product of the variables")]
    NotSaturated,

    #[error("ideal is not Artinian (Krull dimension {0})")]
    NotArtinian(i64),

    #[error("the unit ideal has no proper quotient")]
    UnitIdeal,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("fallback bound {0} exhausted without certifying a complete ray set")]
    FallbackExhausted(i64),

    #[error("retry budget of {0} exhausted while choosing generic linear forms")]
    RetryBudgetExhausted(usize),

    #[error("no witness binomial up to degree {0}; raise the witness degree cap")]
    WitnessCapExceeded(u32),

    #[error("unknown {kind} strategy `{name}` (known: {known})")]
    UnknownStrategy {
        kind: &'static str,
        name: String,
        known: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
