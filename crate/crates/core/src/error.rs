use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("subspaces have different ambient dimensions ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{0} is not a prime")]
    InvalidPrime(u64),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is singular")]
    Singular,
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("path error at line {line}: {message}")]
    Path { line: usize, message: String },
    #[error("name error at line {line}: unknown name `{name}`")]
    Name { line: usize, name: String },
    #[error("invalid quiver: {0}")]
    Quiver(String),
    #[error("truncation error: {0}")]
    Truncation(String),
    #[error("consistency error: {0}")]
    Consistency(String),
    #[error("algebra is not symmetric: no nondegenerate symmetrizing form found")]
    NotSymmetric,
    #[error("dual basis computation failed: Gram matrix is singular")]
    DualBasisFailure,
    #[error("subspace is not an ideal of the commutative algebra")]
    NotAnIdeal,
    #[error("T_n space is not stable under the base field: {0}")]
    KStabilityFailure(String),
    #[error("operation requires positive characteristic")]
    CharZero,
    #[error("parameter constraint violated: {0}")]
    ParameterConstraint(String),
    #[error("characteristic constraint violated: {0}")]
    CharConstraint(String),
    #[error("cannot compare algebras over different fields ({0} vs {1})")]
    CharMismatch(String, String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("defect {defect} out of range for {rep_type} blocks (needs n >= {min})")]
    DefectOutOfRange {
        rep_type: String,
        defect: u32,
        min: u32,
    },
    #[error("open-case table: {0}")]
    OpenCases(String),
}

pub type Result<T> = std::result::Result<T, Error>;
