use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("not a polynomial (at byte {pos}): {msg}")]
    NonPolynomial { pos: usize, msg: String },
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("linear change matrix is singular")]
    SingularMatrix,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisorZero,
    #[error("curve does not pass through the origin")]
    NotThroughOrigin,
    #[error("polynomial is not square-free")]
    NotSquareFree,
    #[error("multiplicity at the origin is {found}, expected degree - 1 = {expected}")]
    WrongMultiplicity { expected: u32, found: String },
    #[error("degree {0} is too small (need at least 3)")]
    DegreeTooSmall(u32),
    #[error("degree {0} is outside the supported range")]
    DegreeOutOfRange(String),
    #[error("{target} is not realizable at a multiplicity-(d-1) point of a degree-{d} curve")]
    TargetNotRealizable { d: u32, target: String },
    #[error("{value} is not in the threshold set for degree {d}")]
    NotInLambdaSet { d: u32, value: String },
    #[error("blowup center is not rational; it is a root of {minimal_polynomial}")]
    IrrationalCenter { minimal_polynomial: String },
    #[error("resolution needed more than {0} blowups")]
    ResolutionCap(usize),
    #[error("resolution tree still has pending centers")]
    IncompleteTree,
    #[error("origin is not a singular point of the curve")]
    NotSingular,
    #[error("no table entry for mult={mult}, tangent cone {pattern}, mu={mu}")]
    NotClassifiable {
        mult: u32,
        pattern: String,
        mu: String,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("self-test failed: {0}")]
    SelfTestFailure(String),
}

/// Coarse error classes, one per CLI exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Precondition,
    IrrationalCenter,
    Internal,
    SelfTest,
}

impl ErrorClass {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorClass::SelfTest => 1,
            ErrorClass::Parse => 2,
            ErrorClass::Precondition => 3,
            ErrorClass::IrrationalCenter => 4,
            ErrorClass::Internal => 5,
        }
    }
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Syntax { .. } | Error::NonPolynomial { .. } | Error::InvalidArgument(_) => {
                ErrorClass::Parse
            }
            Error::IrrationalCenter { .. } => ErrorClass::IrrationalCenter,
            Error::ResolutionCap(_) | Error::IncompleteTree => ErrorClass::Internal,
            Error::SelfTestFailure(_) => ErrorClass::SelfTest,
            Error::ZeroPolynomial
            | Error::SingularMatrix
            | Error::BothZero
            | Error::NotDivisible
            | Error::DivisorZero
            | Error::NotThroughOrigin
            | Error::NotSquareFree
            | Error::WrongMultiplicity { .. }
            | Error::DegreeTooSmall(_)
            | Error::DegreeOutOfRange(_)
            | Error::TargetNotRealizable { .. }
            | Error::NotInLambdaSet { .. }
            | Error::NotSingular
            | Error::NotClassifiable { .. } => ErrorClass::Precondition,
        }
    }

    /// Stable machine-readable name, used in JSON diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "SyntaxError",
            Error::NonPolynomial { .. } => "NonPolynomial",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::SingularMatrix => "SingularMatrix",
            Error::BothZero => "BothZero",
            Error::NotDivisible => "NotDivisible",
            Error::DivisorZero => "DivisorZero",
            Error::NotThroughOrigin => "NotThroughOrigin",
            Error::NotSquareFree => "NotSquareFree",
            Error::WrongMultiplicity { .. } => "WrongMultiplicity",
            Error::DegreeTooSmall(_) => "DegreeTooSmall",
            Error::DegreeOutOfRange(_) => "DegreeOutOfRange",
            Error::TargetNotRealizable { .. } => "TargetNotRealizable",
            Error::NotInLambdaSet { .. } => "NotInLambdaSet",
            Error::IrrationalCenter { .. } => "IrrationalCenter",
            Error::ResolutionCap(_) => "ResolutionCap",
            Error::IncompleteTree => "IncompleteTree",
            Error::NotSingular => "NotSingular",
            Error::NotClassifiable { .. } => "NotClassifiable",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::SelfTestFailure(_) => "SelfTestFailure",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
