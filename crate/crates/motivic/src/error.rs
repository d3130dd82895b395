//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by the exact kernels.
///
/// Every variant corresponds to a violated precondition of some operation;
/// none of them is recoverable by retrying with the same inputs, except
/// `PrecisionExhausted`, which the adaptive-precision drivers in [`crate::curves`]
/// handle internally for exact inputs.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    // ---- Grothendieck ring ----
    #[error("division by the zero class")]
    DivisionByZero,
    #[error("the class has a pole at L = 1; no finite Euler characteristic in this representation")]
    PoleAtOne,
    #[error("the class has a pole at L = {0}")]
    PoleAtQ(i64),
    #[error("geometric series diverges: the ratio has virtual dimension >= 0")]
    DivergentSeries,
    #[error("expected a Laurent polynomial in L, got a proper rational function: {0}")]
    NotLaurentPolynomial(String),

    // ---- truncated series ----
    #[error("series defined over different variable sets: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),
    #[error("constant term is not a unit of the coefficient ring")]
    NonUnitConstantTerm,
    #[error("substituted series must have order >= 1")]
    PositiveOrderRequired,
    #[error("series must have order exactly 1 with invertible leading coefficient")]
    NotOrderOne,
    #[error("no {0}-th root of the leading coefficient in the coefficient field")]
    NoRootInField(u32),

    // ---- power structure ----
    #[error("series must have constant term 1")]
    NonUnitLeadingTerm,
    #[error("partition value must have positive order in t")]
    NonPositiveOrderValue,

    // ---- curves ----
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("branches coincide as parametrized germs")]
    CoincidentBranches,
    #[error("branch is a degenerate arc (factors through a reparametrization of order >= 2)")]
    DegenerateBranch,
    #[error("equation does not vanish on branch {0} of the germ")]
    EquationDoesNotVanish(usize),
    #[error("invalid branch: {0}")]
    InvalidBranch(String),

    // ---- lifting ----
    #[error("lifting hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("Newton iteration stalled: {0}")]
    StalledIteration(String),
    #[error("no coordinate rotation of bounded size normalizes the partial-derivative orders")]
    NoSuitableRotation,

    // ---- strata ----
    #[error("coordinate index {0} out of range for ambient dimension {1}")]
    IndexOutOfRange(usize, usize),
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("{0} and {1} are not coprime")]
    NotCoprime(u64, u64),

    // ---- generating functions ----
    #[error("intersection matrix is singular or not negative definite")]
    SingularMatrix,
    #[error("monomial must have positive total degree in the t variables")]
    NonPositiveDegree,
    #[error("invalid resolution data: {0}")]
    InvalidResolution(String),

    // ---- serialization ----
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
