use thiserror::Error;

/// Every failure the library can report.
///
/// Variants are grouped by the layer that raises them. [`Error::code`] gives a
/// stable identifier that the command-line front end prints alongside the
/// message.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // field
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field element: {0}")]
    BadElement(String),

    // curve
    #[error("bad degree: {0}")]
    BadDegree(String),
    #[error("h must be zero in odd characteristic")]
    NonzeroHOddChar,
    #[error("curve is singular: {0}")]
    SingularCurve(String),
    #[error("point {0} is not on the curve")]
    NotOnCurve(String),
    #[error("singular interpolation system: {0}")]
    SingularSystem(String),

    // function field
    #[error("valuation of the zero function")]
    ZeroFunction,
    #[error("function has a pole at {0}")]
    PoleAtPoint(String),

    // Riemann-Roch
    #[error("no interpolating curve: {0}")]
    NoInterpolant(String),
    #[error("unsupported multiplicity {mult} at ramification point {point}")]
    UnsupportedMultiplicity { point: String, mult: i64 },
    #[error("divisor degree {n} is smaller than its affine part {j}")]
    DegreeTooSmall { n: i64, j: i64 },
    #[error("out of range: {0}")]
    OutOfRange(String),

    // codes
    #[error("evaluation point {0} lies in the support of D")]
    PointInSupport(String),
    #[error("evaluation point {0} listed twice")]
    DuplicatePoint(String),
    #[error("generator matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("exhaustive search needs {needed} codewords, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("minimum distance {d} violates the Goppa bound {bound}")]
    GoppaBoundViolated { d: usize, bound: i64 },

    // job files
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: {message}")]
    Semantic { line: usize, message: String },
}

impl Error {
    /// Stable short code for diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::BadModulus(_) => "BadModulus",
            Error::DivisionByZero => "DivisionByZero",
            Error::BadElement(_) => "BadElement",
            Error::BadDegree(_) => "BadDegree",
            Error::NonzeroHOddChar => "NonzeroHOddChar",
            Error::SingularCurve(_) => "SingularCurve",
            Error::NotOnCurve(_) => "NotOnCurve",
            Error::SingularSystem(_) => "SingularSystem",
            Error::ZeroFunction => "ZeroFunction",
            Error::PoleAtPoint(_) => "PoleAtPoint",
            Error::NoInterpolant(_) => "NoInterpolant",
            Error::UnsupportedMultiplicity { .. } => "UnsupportedMultiplicity",
            Error::DegreeTooSmall { .. } => "DegreeTooSmall",
            Error::OutOfRange(_) => "OutOfRange",
            Error::PointInSupport(_) => "PointInSupport",
            Error::DuplicatePoint(_) => "DuplicatePoint",
            Error::RankDeficient { .. } => "RankDeficient",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::GoppaBoundViolated { .. } => "GoppaBoundViolated",
            Error::Parse { .. } => "ParseError",
            Error::Semantic { .. } => "SemanticError",
        }
    }

    /// True for errors raised while reading a job file (as opposed to
    /// mathematical failures).
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
