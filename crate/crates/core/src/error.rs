use thiserror::Error;

/// Every failure mode surfaced by the library.
///
/// Each variant maps to a stable message code through [`Error::code`], which
/// the command-line front end prints verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dominant weight ({a},{b}): need a >= b >= 0")]
    InvalidWeight { a: i64, b: i64 },

    #[error("not a representation: {0}")]
    NotARepresentation(String),

    #[error("half-integer coefficient at exponent {exponent:?}")]
    HalfIntegerCoefficient { exponent: Vec<i32> },

    #[error("free Lie character in degree {degree} is not integral")]
    NonIntegralResult { degree: u32 },

    #[error("inconsistent twisted/untwisted traces on H_{block}: sum {sum}, difference {difference}")]
    InconsistentTraces { block: u32, sum: i128, difference: i128 },

    #[error("degree {degree} outside 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("unsupported weight {weight}: {reason}")]
    UnsupportedWeight { weight: i64, reason: String },

    #[error("precision {precision} cannot reach tolerance {tolerance:e}")]
    PrecisionUnreachable { precision: usize, tolerance: f64 },

    #[error("a+b = {0} is odd")]
    OddParity(u32),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("facts table: {0}")]
    Facts(String),

    #[error("uncited fact `{0}`")]
    UncitedFact(String),

    #[error("coefficient bound violated at n = {n}")]
    CoefficientBound { n: usize },

    #[error("undetermined: {0}")]
    Undetermined(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidWeight { .. } => "E_INVALID_WEIGHT",
            Error::NotARepresentation(_) => "E_NOT_A_REPRESENTATION",
            Error::HalfIntegerCoefficient { .. } => "E_HALF_INTEGER_COEFFICIENT",
            Error::NonIntegralResult { .. } => "E_NON_INTEGRAL_RESULT",
            Error::InconsistentTraces { .. } => "E_INCONSISTENT_TRACES",
            Error::DegreeOutOfRange { .. } => "E_DEGREE_OUT_OF_RANGE",
            Error::UnsupportedWeight { .. } => "E_UNSUPPORTED_WEIGHT",
            Error::PrecisionUnreachable { .. } => "E_PRECISION_UNREACHABLE",
            Error::OddParity(_) => "E_ODD_PARITY",
            Error::InvalidArgument(_) => "E_INVALID_ARGUMENT",
            Error::Facts(_) => "E_FACTS_TABLE",
            Error::UncitedFact(_) => "E_UNCITED_FACT",
            Error::CoefficientBound { .. } => "E_COEFFICIENT_BOUND",
            Error::Undetermined(_) => "E_UNDETERMINED",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
