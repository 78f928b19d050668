use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },

    #[error("exponent vector has length {got}, expected {expected}")]
    ExponentLength { expected: usize, got: usize },

    #[error("polynomial is not exactly divisible by the divisor")]
    NotDivisible,

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("series mismatch: {0}")]
    SeriesMismatch(String),

    #[error("constant term of the series is not a unit")]
    NonUnitConstantTerm,

    #[error("variable `{0}` is not assigned")]
    UnassignedVariable(String),

    #[error("variable `{0}` is zero but occurs with a negative exponent")]
    ZeroToNegativePower(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unsupported rank {rank} for type {cartan}")]
    UnsupportedRank { cartan: char, rank: usize },

    #[error("weight has length {got}, datum expects {expected}")]
    WeightLength { expected: usize, got: usize },

    #[error("weight {0:?} (doubled coordinates) is not dominant")]
    NotDominant(Vec<i64>),

    #[error("weight {0:?} (doubled coordinates) is not integral")]
    NotIntegral(Vec<i64>),

    #[error("character has odd exponents in half-power variables")]
    NonIntegralResult,

    #[error("Freudenthal oracle budget exceeded: {0}")]
    OracleBudgetExceeded(String),

    #[error("negative degree {0}")]
    NegativeDegree(i64),

    #[error("residual exponent after substitution: {0}")]
    ResidualExponent(String),

    #[error("unsupported abelian L-factor power {0}")]
    UnsupportedPower(u32),

    #[error("convergence guard violated: ratio {ratio} exceeds {limit}")]
    DivergenceGuard { ratio: f64, limit: f64 },

    #[error("local zeta needs more than {0} terms")]
    TermCapExceeded(usize),

    #[error("local factor too close to a pole at q = {q}: |denominator| = {magnitude:e}")]
    PoleProximity { q: u64, magnitude: f64 },

    #[error("invalid Satake data: {0}")]
    InvalidSatake(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error("{0}")]
    Usage(String),
}

impl Error {
    /// Errors that indicate a broken internal invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NotDivisible | Error::NonIntegralResult | Error::ResidualExponent(_)
        )
    }
}
