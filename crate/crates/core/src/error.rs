use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("relation `{0}` is not homogeneous")]
    InhomogeneousRelation(String),
    #[error("differential of `{generator}` has degree {found}, expected {expected}")]
    BadDifferentialDegree {
        generator: String,
        expected: usize,
        found: usize,
    },
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid field `{0}`")]
    InvalidField(String),
    #[error("degree {requested} is outside the window 0..={max}")]
    DegreeOutOfRange { requested: usize, max: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("subspace is not contained in the ambient subspace")]
    NotContained,
    #[error("division by zero")]
    DivisionByZero,
    #[error("window exhausted: {0}")]
    WindowExhausted(String),
    #[error("cocycle representative could not be moved into I*P: {0}")]
    RepresentativeNotInIP(String),
    #[error("lift failed: {0}")]
    LiftFailed(String),
    #[error("algebra is not local: {0}")]
    NotLocal(String),
    #[error("algebra is not quadratic: {0}")]
    NotQuadratic(String),
    #[error("coalgebra is not cocomplete: {0}")]
    NotCocomplete(String),
    #[error("trivial module is not compact within the window: {0}")]
    NotCompact(String),
    #[error("bounds too small: {0}")]
    BoundsTooSmall(String),
    #[error("twisting cochain identity violated: {0}")]
    TwistingIdentityViolated(String),
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}
