use thiserror::Error;

/// Errors raised by the algebra kernels and the certification pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("root system construction failed: {0}")]
    RootSystem(String),

    #[error("vector is not a root: {0:?}")]
    NotARoot([i8; 8]),

    #[error("structure constants are inconsistent: {0}")]
    StructureConstants(String),

    #[error("half-square of ad(e_{root}) is not integral")]
    NonIntegralHalfSquare { root: usize },

    #[error("invalid generator word: {0}")]
    Word(String),

    #[error("CRT control prime {prime} disagrees with reconstruction")]
    ControlMismatch { prime: u64 },

    #[error("multiplicity of eigenvalue 1 falls short of {expected}")]
    UnitMultiplicity { expected: usize },

    #[error("polynomial is not self-reciprocal")]
    NotPalindromic,

    #[error("polynomial is {0}")]
    DegeneratePoly(&'static str),

    #[error("prime {0} divides the leading coefficient")]
    BadPrime(u64),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{stage} failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn at_stage(stage: &'static str) -> impl FnOnce(Error) -> Error {
        move |e| Error::Stage {
            stage,
            source: Box::new(e),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
