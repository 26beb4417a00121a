use thiserror::Error;

/// Everything that can go wrong while building or comparing series.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exponent {exp} lies above the guarantee {guarantee}")]
    GuaranteeViolation { exp: i64, guarantee: i64 },

    #[error("series vanishes through its guarantee {0} and has no inverse")]
    NotInvertible(i64),

    #[error("unsupported base denominator {0} (only 1 and 2 are allowed)")]
    UnsupportedDen(i64),

    #[error("expected base denominator {expected}, found {found}")]
    DenMismatch { expected: i64, found: i64 },

    #[error("nonzero coefficient at odd exponent {0}")]
    Parity(i64),

    #[error("the product (1;q)_inf vanishes identically")]
    DegenerateProduct,

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("f_abc needs positive x and y exponents, got ({0}, {1})")]
    Convergence(i64, i64),

    #[error("base error: {0}")]
    Base(String),

    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),

    #[error("{context}: {source}")]
    Context { context: String, source: Box<Error> },
}

impl Error {
    pub fn context(self, context: impl Into<String>) -> Error {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) trait ResultExt<T> {
    fn context_with(self, f: impl FnOnce() -> String) -> Result<T>;
}

impl<T> ResultExt<T> for Result<T> {
    fn context_with(self, f: impl FnOnce() -> String) -> Result<T> {
        self.map_err(|e| e.context(f()))
    }
}
