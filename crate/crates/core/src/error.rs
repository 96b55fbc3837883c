use thiserror::Error;

/// Errors surfaced by the solver pipeline and its building blocks.
///
/// The Monte Carlo failures (`SeparationFailure`, `SingularJacobian`,
/// `SpecializationFailure`, `ReconstructionFailure`) are recoverable by
/// re-running with fresh random choices; orchestrators retry on them and only
/// report `RandomnessExhausted` once the retry budget is spent.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("duplicate interpolation abscissa")]
    DuplicateAbscissa,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("rational reconstruction failed (precision too low)")]
    ReconstructionFailure,
    #[error("zero divisor modulo the current modulus (witness factor of degree {witness_degree})")]
    ZeroDivisor { witness_degree: usize },
    #[error("Jacobian is singular over the current quotient ring")]
    SingularJacobian,
    #[error("polynomial has repeated roots")]
    NotSquarefree,
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("syntax error at line {line}, column {column}: expected {expected}")]
    SyntaxError {
        line: usize,
        column: usize,
        expected: String,
    },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("linear form does not separate the points")]
    SeparationFailure,
    #[error("specialization at T = 1 failed: {0}")]
    SpecializationFailure(String),
    #[error("lifted branch is not polynomial in the parameter")]
    NonPolynomialBranch,
    #[error("random choices failed {attempts} times; last failure: {last}")]
    RandomnessExhausted { attempts: usize, last: String },
    #[error("search space too large: {0}")]
    TooLarge(String),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("malformed record: {0}")]
    MalformedRecord(String),
}

impl Error {
    /// Failures that a fresh draw of random choices may cure.
    pub fn is_monte_carlo(&self) -> bool {
        matches!(
            self,
            Error::SeparationFailure
                | Error::SingularJacobian
                | Error::SpecializationFailure(_)
                | Error::ReconstructionFailure
                | Error::ZeroDivisor { .. }
                | Error::NonPolynomialBranch
                | Error::NotSquarefree
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
