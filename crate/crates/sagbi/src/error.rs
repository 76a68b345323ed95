use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("divided power undefined: {0}! is not invertible in the coefficient field")]
    DividedPowerUndefined(u64),

    #[error("weight matrix is not a positive grading")]
    NotPositiveGrading,

    #[error("matrix does not define a term ordering: {0}")]
    NotTermOrdering(String),

    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,

    #[error("ordering does not eliminate the required variable block")]
    OrderingNotEliminating,

    #[error("input polynomials are not homogeneous for the given grading")]
    NotHomogeneous,

    #[error("saturating element does not belong to the subalgebra")]
    GNotInS,

    #[error("subalgebra is not graded as required: {0}")]
    NotGraded(String),

    #[error("term ordering is not of a0-DegRev type compatible with the grading")]
    OrderingNotDegRevType,

    #[error("grading shape invalid: {0}")]
    BadGradingShape(String),

    #[error("witness polynomial does not certify membership: {0}")]
    WitnessNotInS(String),

    #[error("parse error at {line}:{col}: expected {expected}")]
    Parse {
        line: usize,
        col: usize,
        expected: String,
    },

    #[error("undeclared variable `{0}`")]
    UndeclaredVariable(String),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),
}

pub type Result<T> = std::result::Result<T, Error>;
