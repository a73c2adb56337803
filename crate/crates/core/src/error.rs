use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Failures reported by the solvers, validators and analysis routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// No nodes, entries or rows were supplied.
    EmptyInput,
    /// A node lies outside the open interval (0, 1).
    NodeOutOfRange {
        index: usize,
        value: f64,
    },
    /// `x[index] >= x[index + 1]`.
    NodesNotStrictlyIncreasing {
        index: usize,
    },
    /// An entry is NaN or infinite.
    NonFiniteEntry {
        index: usize,
    },
    /// A basis index `k` exceeds the degree `n`.
    IndexOutOfRange {
        index: usize,
        degree: usize,
    },
    /// A closed-form determinant does not fit in binary64.
    DeterminantOverflow,
    /// A factorization entry over- or underflowed binary64.
    NonFiniteIntermediate,
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    /// A compact factorization array has a non-positive or non-finite entry.
    NotStrictlyPositive {
        row: usize,
        col: usize,
    },
    SingularMatrix,
    /// Neville elimination needs a row exchange, which the caller ruled out.
    ZeroPivot {
        row: usize,
        col: usize,
    },
    /// Exact nodes are not strictly increasing inside (0, 1).
    InvalidNodes,
    /// Relative error against an all-zero reference vector.
    ZeroReference,
    ZeroVector,
    NoConvergence {
        sweeps: usize,
    },
    UnknownExperiment,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyInput => write!(f, "empty input"),
            Error::NodeOutOfRange { index, value } => write!(
                f,
                "node {index} = {value} is outside the open interval (0, 1)"
            ),
            Error::NodesNotStrictlyIncreasing { index } => write!(
                f,
                "nodes are not strictly increasing: node {index} >= node {}",
                index + 1
            ),
            Error::NonFiniteEntry { index } => write!(f, "entry {index} is not finite"),
            Error::IndexOutOfRange { index, degree } => {
                write!(f, "basis index {index} exceeds degree {degree}")
            }
            Error::DeterminantOverflow => {
                write!(f, "determinant is outside the binary64 range")
            }
            Error::NonFiniteIntermediate => write!(
                f,
                "factorization entry over- or underflowed; nodes too extreme for this degree"
            ),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotStrictlyPositive { row, col } => write!(
                f,
                "factorization entry ({row}, {col}) is not strictly positive and finite"
            ),
            Error::SingularMatrix => write!(f, "matrix is singular"),
            Error::ZeroPivot { row, col } => {
                write!(f, "zero pivot at ({row}, {col}) requires a row exchange")
            }
            Error::InvalidNodes => {
                write!(f, "nodes must be strictly increasing inside (0, 1)")
            }
            Error::ZeroReference => write!(f, "reference vector is zero"),
            Error::ZeroVector => write!(f, "right-hand side is zero"),
            Error::NoConvergence { sweeps } => {
                write!(f, "Jacobi SVD did not converge after {sweeps} sweeps")
            }
            Error::UnknownExperiment => write!(f, "unknown experiment"),
        }
    }
}

impl core::error::Error for Error {}
