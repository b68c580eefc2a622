use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown generator id {0}")]
    UnknownGenerator(usize),

    #[error("unknown generator name `{0}`")]
    UnknownGeneratorName(String),

    #[error("word has augmentation degree {0}, expected 0")]
    NotInKernel(i64),

    #[error("generator `{0}` has nonzero augmentation degree; normalize the system first")]
    NotNormalized(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("augmentation does not kill relator {index} (`{relator}`): degree {degree}")]
    EpsilonInconsistent {
        index: usize,
        relator: String,
        degree: i64,
    },

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("representation does not satisfy relator {relator} at shift {shift}")]
    RelatorViolated { relator: usize, shift: usize },

    #[error("representation does not match the presentation: {0}")]
    RepMismatch(String),

    #[error("representation is not transitive ({0} orbits); enable reducible mode to accept it")]
    NotTransitive(usize),

    #[error("not a homomorphism: relator {0} is not mapped to the identity")]
    NotAHomomorphism(usize),

    #[error("root finder did not converge (residual {residual:e})")]
    RootFinding { residual: f64 },

    #[error("{0}")]
    Unsupported(String),

    #[error("JSON error: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
