use thiserror::Error;

/// Errors raised by the engine.
///
/// [`Error::Inconsistency`] is special: it means a computed quantity
/// contradicts a theorem the engine relies on (for instance a Tjurina number
/// above the du Plessis–Wall bound). It must never fire on correct input and
/// the CLI maps it to its own exit code.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("polynomial is not homogeneous: found terms of degree {expected} and {found}")]
    Homogeneity { expected: u32, found: u32 },

    #[error("field backend mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("invalid field tag `{0}` (expected `Q` or `Fp:<prime>`)")]
    FieldTag(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("denominator vanishes modulo {0}")]
    UnluckyPrime(u64),

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("repeated abscissa in interpolation data")]
    RepeatedAbscissa,

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("duplicate line {0} in arrangement")]
    DuplicateLine(String),

    #[error("point {0} is not an intersection point of the arrangement")]
    NotALatticePoint(String),

    #[error("point {0} lies on the arrangement")]
    PointOnArrangement(String),

    #[error("modular backends disagree: ranks {0:?} for primes {1:?}")]
    BackendDisagreement(Vec<usize>, Vec<u64>),

    #[error("Milnor algebra Hilbert function did not stabilize (profile {0:?}); input is probably not reduced")]
    NonStabilization(Vec<(u32, usize)>),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("degenerate Macaulay denominator after {0} coordinate changes")]
    DegenerateDenominator(usize),

    #[error("input too large: {0}")]
    TooLarge(String),

    #[error("mathematical inconsistency: {0}")]
    Inconsistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn is_inconsistency(&self) -> bool {
        matches!(self, Error::Inconsistency(_) | Error::BackendDisagreement(..))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
