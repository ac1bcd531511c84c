use thiserror::Error;

/// Errors raised by the library. Messages are surfaced verbatim by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("valuation of zero undefined")]
    ValuationOfZero,

    #[error("{0} is not a prime")]
    NotPrime(String),

    #[error("factorization of zero undefined")]
    FactorZero,

    #[error("factoring budget exceeded: unresolved cofactor {cofactor}")]
    FactorBudgetExceeded { cofactor: String },

    #[error("ideal undefined for equal points")]
    IdealOfEqualPoints,

    #[error("points must be pairwise distinct: {0} repeats")]
    RepeatedPoint(String),

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("zero map")]
    ZeroMap,

    #[error("map degree must be at least 1")]
    ConstantMap,

    #[error("not in lowest terms")]
    NotLowestTerms,

    #[error("coefficient lists must have equal length at least 2")]
    MalformedForms,

    #[error("degree bump requires nonzero lower-left entry")]
    DegreeBumpZeroEntry,

    #[error("degree bump requires a map fixing infinity")]
    DegreeBumpNotFixingInfinity,

    #[error("singular matrix")]
    SingularMatrix,

    #[error("iterate degree {degree} exceeds the guard {guard}")]
    DegreeGuard { degree: String, guard: u64 },

    #[error("every point is periodic: the iterate is the identity")]
    IdentityIterate,

    #[error("cycle has repeated point {point} at positions {first} and {second}")]
    CycleNotDistinct {
        point: String,
        first: usize,
        second: usize,
    },

    #[error("cycle broken at position {index}: image of {point} is {image}, expected {expected}")]
    CycleEval {
        index: usize,
        point: String,
        image: String,
        expected: String,
    },

    #[error("map has bad reduction at {prime}, which lies outside S")]
    CycleReduction { prime: String },

    #[error("cycle must have at least {min} points")]
    CycleTooShort { min: usize },

    #[error("ledger identity {equation} fails: {detail}")]
    LedgerViolation {
        equation: &'static str,
        detail: String,
    },

    #[error("tuple lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("equivalence search exceeded budget: unit subgroup modulo {modulus} too large")]
    EquivalenceBudget { modulus: String },

    #[error("degenerate parameter u = {0}")]
    DegenerateParameter(String),

    #[error("u must be an S-unit for good reduction")]
    ParameterNotUnit,

    #[error("family construction check failed: {0}")]
    FamilyCheck(String),

    #[error("unit equation needs 2 or 3 nonzero coefficients")]
    UnitEquationShape,

    #[error("parse error at {position}: {message} (near '{token}')")]
    Parse {
        position: usize,
        token: String,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
