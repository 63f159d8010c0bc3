use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("discriminant {0} is a square in Q")]
    SquareDiscriminant(String),

    #[error("element is not a unit (degree-0 part vanishes in factor {factor})")]
    NonUnit { factor: usize },

    #[error("rank must be at least 2, got {0}")]
    RankTooSmall(usize),

    #[error("invalid root: {0}")]
    InvalidRoot(String),

    #[error("roots {0} and {1} are proportional")]
    ProportionalRoots(String, String),

    #[error("roots {0} and {1} have different lengths")]
    MixedLengths(String, String),

    #[error("root {root} expects a {expected} coordinate")]
    CoordinateKind { root: String, expected: &'static str },

    #[error("algebra mismatch: {0}")]
    SpecMismatch(String),

    #[error("not a group element: {0}")]
    NotMember(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("rewrite not applicable at position {position}: {reason}")]
    RewriteInapplicable { position: usize, reason: String },

    #[error("invalid ring map: {0}")]
    InvalidRingMap(String),

    #[error("commutator reconstruction failed for ({alpha}, {beta}): {detail}")]
    Reconstruction {
        alpha: String,
        beta: String,
        detail: String,
    },

    #[error("no consistent Weyl twist for ({alpha}, {beta})")]
    NoTwist { alpha: String, beta: String },

    #[error("identity check failed: {0}")]
    IdentityFailed(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
