use thiserror::Error;

/// Engine-wide error type. Every variant carries a stable machine-readable
/// code (see [`Error::code`]) used by the CLI artifact envelope.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("evaluation of a monomial with a negative exponent at zero")]
    ZeroAtNegativeExponent,
    #[error("expected a single monomial")]
    NotAMonomial,
    #[error("denominator {den} is divisible by {p}")]
    NonIntegralDenominator { den: String, p: u64 },
    #[error("mixed polynomial/Laurent contexts or mismatched variable counts")]
    ContextMismatch,
    #[error("computation cap exceeded: {what}")]
    CapExceeded { what: String },
    #[error("coefficient {coeff} of {monomial} is not an integer")]
    NonIntegral { monomial: String, coeff: String },
    #[error("monomial is not primitive")]
    NotPrimitive,
    #[error("weight is not dominant")]
    NotDominant,
    #[error("unsupported Lie type")]
    UnsupportedType,
    #[error("vector is not a highest-l-weight vector: {0}")]
    NotHighestLWeight(String),
    #[error("evaluation point has a zero coordinate")]
    ZeroEvalPoint,
    #[error("module has no distinguished cyclic vector")]
    NotCyclic,
    #[error("graded Weyl construction requires characteristic != 2")]
    CharTwoUnsupported,
    #[error("operation requires characteristic 0")]
    CharPositiveUnsupported,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial has no root in the base field: {0}")]
    NoRootInField(String),
    #[error("l-weight data not representable over the base field: {0}")]
    UnsupportedLWeight(String),
    #[error("generalized eigenspace does not split over the base field")]
    UnsplittableOverField,
    #[error("action of {0} is not stored in this module")]
    MissingAction(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable code for machine consumption.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroAtNegativeExponent => "zero-at-negative-exponent",
            Error::NotAMonomial => "not-a-monomial",
            Error::NonIntegralDenominator { .. } => "non-integral-denominator",
            Error::ContextMismatch => "context-mismatch",
            Error::CapExceeded { .. } => "cap-exceeded",
            Error::NonIntegral { .. } => "non-integral",
            Error::NotPrimitive => "not-primitive",
            Error::NotDominant => "not-dominant",
            Error::UnsupportedType => "unsupported-type",
            Error::NotHighestLWeight(_) => "not-highest-l-weight",
            Error::ZeroEvalPoint => "zero-eval-point",
            Error::NotCyclic => "not-cyclic",
            Error::CharTwoUnsupported => "char-two-unsupported",
            Error::CharPositiveUnsupported => "char-positive-unsupported",
            Error::NotPrime(_) => "not-prime",
            Error::NoRootInField(_) => "no-root-in-field",
            Error::UnsupportedLWeight(_) => "unsupported-l-weight",
            Error::UnsplittableOverField => "unsplittable-over-field",
            Error::MissingAction(_) => "missing-action",
            Error::InvalidInput(_) => "invalid-input",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
