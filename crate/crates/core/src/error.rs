//! Error type shared by all modules of the crate.

use std::fmt;

/// Errors raised by field construction, linear algebra, and code building.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The requested characteristic is not a prime number.
    NotPrime(u64),
    /// The supplied modulus polynomial is reducible (or not monic of the
    /// stated degree).
    ReducibleModulus(String),
    /// No built-in default modulus is shipped for this field order.
    NoDefaultField(u64),
    /// Operands belong to different fields.
    FieldMismatch,
    /// Multiplicative inverse of zero requested.
    ZeroInversion,
    /// Matrix or vector shapes are incompatible.
    ShapeMismatch { expected: (usize, usize), got: (usize, usize) },
    /// Subspaces live in different ambient spaces.
    AmbientMismatch,
    /// A parameter is outside its documented range.
    InvalidParameter(String),
    /// Puncturing a coordinate whose unit vector lies in the subspace.
    UnitVectorInSubspace(usize),
    /// A matrix has a nonzero entry outside the Ferrers diagram it must fit.
    PatternViolation { row: usize, col: usize },
    /// Skeleton code minimum distance is below what the construction needs.
    SkeletonDistanceTooSmall { required: usize, found: usize },
    /// Unknown fixture name.
    UnknownFixture(String),
    /// Message length does not match the code dimension.
    MessageLength { expected: usize, got: usize },
    /// An enumeration would exceed the desk-scale limit.
    DeskScaleExceeded { limit: u128, requested: u128 },
    /// A code file or skeleton file could not be parsed.
    Format(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::ReducibleModulus(m) => write!(f, "modulus {m} is not irreducible"),
            Error::NoDefaultField(q) => {
                write!(f, "no built-in modulus for a field of order {q}")
            }
            Error::FieldMismatch => write!(f, "operands belong to different fields"),
            Error::ZeroInversion => write!(f, "zero has no multiplicative inverse"),
            Error::ShapeMismatch { expected, got } => write!(
                f,
                "shape mismatch: expected {}x{}, got {}x{}",
                expected.0, expected.1, got.0, got.1
            ),
            Error::AmbientMismatch => write!(f, "subspaces live in different ambient spaces"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::UnitVectorInSubspace(i) => {
                write!(f, "unit vector e_{} lies in the subspace", i + 1)
            }
            Error::PatternViolation { row, col } => write!(
                f,
                "nonzero entry at ({row},{col}) outside the Ferrers diagram"
            ),
            Error::SkeletonDistanceTooSmall { required, found } => write!(
                f,
                "skeleton minimum distance {found} is below the required {required}"
            ),
            Error::UnknownFixture(name) => write!(f, "unknown fixture `{name}`"),
            Error::MessageLength { expected, got } => {
                write!(f, "message length {got}, code dimension {expected}")
            }
            Error::DeskScaleExceeded { limit, requested } => write!(
                f,
                "enumeration of {requested} items exceeds the desk-scale limit {limit}"
            ),
            Error::Format(msg) => write!(f, "format error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
