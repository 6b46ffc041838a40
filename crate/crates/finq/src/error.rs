use thiserror::Error;

/// Every failure the library can report.
///
/// Variants are grouped by the module that raises them. `kind()` gives a
/// stable machine-readable tag used in structured error output.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{k} is not coprime to conductor {n}")]
    NotCoprime { k: i64, n: u32 },
    #[error("no cyclotomic number within bounds matches {re}+{im}i in conductor {n}")]
    NotFound { re: f64_bits::F64, im: f64_bits::F64, n: u32 },

    #[error("parse error: {0}")]
    Parse(String),
    #[error("point {point} out of range for degree {degree}")]
    OutOfRange { point: usize, degree: usize },
    #[error("action is not transitive")]
    NotTransitive,
    #[error("closure exceeds cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("product of basis forms {p} and {q} leaves the span of the basis")]
    NotInRing { p: usize, q: usize },
    #[error("problem size exceeds desk scale: {0}")]
    ScaleExceeded(String),
    #[error("factorization failed after {attempts} attempts: {reason}")]
    FactorizationFailed { attempts: usize, reason: String },
    #[error("basis forms {p} and {q} do not commute")]
    NonCommutative { p: usize, q: usize },
    #[error("no commuting coarsening found")]
    CoarseningFailed,
    #[error("singular linear system for component {component}")]
    SingularSystem { component: usize },

    #[error("Born probability {0} is irrational")]
    IrrationalProbability(String),
    #[error("state vector has zero norm in the selected component")]
    ZeroNorm,

    #[error("bit string length {got} does not match q^|points| = {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("target points are not a superset of the relation's points")]
    NotSuperset,
    #[error("relation on {0:?} is not a consequence")]
    NotConsequence(Vec<String>),
    #[error("operation requires q = 2, got q = {0}")]
    UnsupportedQ(u32),

    #[error("map is not an antihomomorphism of the space group")]
    NotAntihomomorphism,
    #[error("graph is not regular")]
    NotRegular,
    #[error("rule does not commute with the group action")]
    NotEquivariant,
    #[error("path uses a missing edge ({0}, {1})")]
    BadPath(usize, usize),

    #[error("point x={x} lies outside the light cone of t={t}")]
    OutOfCone { x: i64, t: i64 },
    #[error("x={x} and t={t} have different parity")]
    ParityViolation { x: i64, t: i64 },
    #[error("argument outside the domain: {0}")]
    DomainError(String),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::NotCoprime { .. } => "NotCoprime",
            Error::NotFound { .. } => "NotFound",
            Error::Parse(_) => "ParseError",
            Error::OutOfRange { .. } => "OutOfRange",
            Error::NotTransitive => "NotTransitive",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::DegreeMismatch { .. } => "DegreeMismatch",
            Error::NotInRing { .. } => "NotInRing",
            Error::ScaleExceeded(_) => "ScaleExceeded",
            Error::FactorizationFailed { .. } => "FactorizationFailed",
            Error::NonCommutative { .. } => "NonCommutative",
            Error::CoarseningFailed => "CoarseningFailed",
            Error::SingularSystem { .. } => "SingularSystem",
            Error::IrrationalProbability(_) => "IrrationalProbability",
            Error::ZeroNorm => "ZeroNorm",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::NotSuperset => "NotSuperset",
            Error::NotConsequence(_) => "NotConsequence",
            Error::UnsupportedQ(_) => "UnsupportedQ",
            Error::NotAntihomomorphism => "NotAntihomomorphism",
            Error::NotRegular => "NotRegular",
            Error::NotEquivariant => "NotEquivariant",
            Error::BadPath(..) => "BadPath",
            Error::OutOfCone { .. } => "OutOfCone",
            Error::ParityViolation { .. } => "ParityViolation",
            Error::DomainError(_) => "DomainError",
            Error::UnknownFixture(_) => "UnknownFixture",
            Error::Invalid(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// `f64` wrapper with bitwise equality so `Error` can stay `Eq`.
pub mod f64_bits {
    use std::fmt;

    #[derive(Clone, Copy)]
    pub struct F64(pub f64);

    impl PartialEq for F64 {
        fn eq(&self, other: &Self) -> bool {
            self.0.to_bits() == other.0.to_bits()
        }
    }
    impl Eq for F64 {}

    impl fmt::Debug for F64 {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "{}", self.0)
        }
    }
    impl fmt::Display for F64 {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "{}", self.0)
        }
    }
}
