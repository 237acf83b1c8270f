use alloc::string::String;
use core::fmt;

/// Errors raised by the order-theoretic primitives and the selection engine.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two operands (or an operand and a space) disagree on dimension.
    DimensionMismatch { expected: usize, found: usize },
    /// An entry was NaN or infinite.
    NonFinite,
    /// The operation needs a vector lattice, the space is only ordered.
    Unsupported(&'static str),
    /// A family, generator list or state was empty.
    Empty(&'static str),
    /// No member of the family dominates both members of this pair.
    NotDirected { first: usize, second: usize },
    /// A functional with a zero weight was used where faithfulness is required.
    NotFaithful { coordinate: usize },
    /// A negative weight or matrix entry.
    NotPositive { index: usize },
    /// A sequence that should increase does not (`index` is the offending step).
    NotIncreasing { index: usize },
    /// A member of the family (or sequence) exceeds the attached upper bound.
    ExceedsBound { index: usize },
    /// A family member fails the subspace membership predicate.
    NotInSubspace { index: usize },
    /// Two projections with overlapping supports were declared orthogonal.
    NotOrthogonal { first: usize, second: usize },
    /// The Loewner grid is too coarse to support a conclusion.
    GridTooCoarse { delta: f64 },
    /// Weights of a state do not sum to one.
    NotNormalized { total: f64 },
    /// Any other malformed parameter.
    InvalidParameter(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NonFinite => f.write_str("element contains a non-finite entry"),
            Error::Unsupported(what) => write!(f, "unsupported operation: {what}"),
            Error::Empty(what) => write!(f, "{what} must be non-empty"),
            Error::NotDirected { first, second } => write!(
                f,
                "family is not upward directed: no member dominates members {first} and {second}"
            ),
            Error::NotFaithful { coordinate } => write!(
                f,
                "functional is not faithful: weight of coordinate {coordinate} is zero \
                 (the basis vector e_{coordinate} is positive, nonzero and has value 0)"
            ),
            Error::NotPositive { index } => write!(f, "entry {index} is negative"),
            Error::NotIncreasing { index } => {
                write!(f, "sequence is not increasing at step {index}")
            }
            Error::ExceedsBound { index } => {
                write!(f, "element {index} is not below the upper bound")
            }
            Error::NotInSubspace { index } => {
                write!(f, "member {index} does not belong to the subspace")
            }
            Error::NotOrthogonal { first, second } => {
                write!(f, "projections {first} and {second} have overlapping supports")
            }
            Error::GridTooCoarse { delta } => {
                write!(f, "grid step {delta} is too coarse (must be <= 0.05)")
            }
            Error::NotNormalized { total } => {
                write!(f, "state weights sum to {total}, expected 1")
            }
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
