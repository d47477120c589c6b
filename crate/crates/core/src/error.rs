use thiserror::Error;

use crate::report::Witness;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: String, found: String },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("shape mismatch: expected {expected_rows}x{expected_cols}, found {rows}x{cols}")]
    ShapeMismatch {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("invalid index tuple {tuple:?}: {reason}")]
    InvalidTuple { tuple: Vec<usize>, reason: String },

    #[error("not an n-Lie algebra: {0}")]
    NotAnNLieAlgebra(Box<Witness>),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(Box<Witness>),

    #[error("not a Nijenhuis operator: {0}")]
    NotNijenhuis(Box<Witness>),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("cochain degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("functional does not vanish on the derived algebra: {0}")]
    FunctionalNotVanishingOnDerived(Box<Witness>),

    #[error("{name} is not a derivation of the associative algebra: {witness}")]
    NotADerivation { name: String, witness: Box<Witness> },

    #[error("functional symmetry f(D(x)y) = f(xD(y)) violated: {0}")]
    FunctionalSymmetryViolated(Box<Witness>),

    #[error("derivations {first} and {second} do not commute")]
    DerivationsDoNotCommute { first: String, second: String },

    #[error("product is not associative: {0}")]
    NotAssociative(Box<Witness>),

    #[error("not a Nijenhuis operator on the associative algebra: {0}")]
    NotNijenhuisAssoc(Box<Witness>),

    #[error("operator does not commute with {0}")]
    CommutationViolated(String),

    #[error("unknown catalog name `{0}`")]
    UnknownName(String),

    #[error("missing parameter `{param}` for `{name}`")]
    MissingParam { name: String, param: String },

    #[error("invalid parameter `{param}`: {reason}")]
    InvalidParam { param: String, reason: String },

    #[error("json: {0}")]
    Json(String),
}

impl Error {
    /// The counterexample carried by a failed mathematical precondition.
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Error::NotAnNLieAlgebra(w)
            | Error::InvalidRepresentation(w)
            | Error::NotNijenhuis(w)
            | Error::FunctionalNotVanishingOnDerived(w)
            | Error::FunctionalSymmetryViolated(w)
            | Error::NotAssociative(w)
            | Error::NotNijenhuisAssoc(w) => Some(w),
            Error::NotADerivation { witness, .. } => Some(witness),
            _ => None,
        }
    }

    /// Mathematical preconditions that failed, as opposed to malformed input.
    pub fn is_check_failure(&self) -> bool {
        self.witness().is_some()
            || matches!(
                self,
                Error::DerivationsDoNotCommute { .. } | Error::CommutationViolated(_) | Error::SingularMatrix
            )
    }

    pub(crate) fn dim(expected: usize, found: usize) -> Self {
        Error::DimensionMismatch { expected, found }
    }

    pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::dim(expected, found))
        }
    }
}
