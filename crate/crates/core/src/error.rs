use std::path::PathBuf;

use num_complex::Complex64;

/// Errors raised anywhere in the library.
///
/// Variants are grouped by the exit status the CLI maps them to: numeric and
/// validation failures, usage/precondition errors, and I/O or network errors.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{n} is not prime (divisible by {witness})")]
    NotPrime { n: u64, witness: u64 },

    #[error("modulus {0} is too small; need a prime q >= 3")]
    ModulusTooSmall(u64),

    #[error("({m}*{n}, {q}) > 1: identity requires coprime arguments")]
    NotCoprime { m: u64, n: u64, q: u64 },

    #[error("character index {index} mod {q} is {kind}; {needed} character required")]
    CharacterKind {
        index: usize,
        q: u64,
        kind: &'static str,
        needed: &'static str,
    },

    #[error("gamma function pole at s = {0}")]
    GammaPole(Complex64),

    #[error("sigma0 = {0} outside [1/2, 1); pass extended_range to evaluate there")]
    SigmaOutOfRange(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("quadrature tail not resolved: {0}")]
    QuadratureTail(String),

    #[error("fixture too shallow: need lambda(n) up to n = {required}, fixture has {available}")]
    DepthExceeded { required: usize, available: usize },

    #[error("convergence failure: {0}")]
    Convergence(String),

    #[error("{path}:{line}: {message}")]
    FixtureFormat {
        path: String,
        line: usize,
        message: String,
    },

    #[error(
        "Hecke relation violated at (m, n) = ({m}, {n}): defect {defect:.3e} > {tolerance:.1e}"
    )]
    HeckeViolation {
        m: usize,
        n: usize,
        defect: f64,
        tolerance: f64,
    },

    #[error("character index {index} mod {q}: {source}")]
    AtCharacter {
        index: usize,
        q: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("remote label {0:?} not found")]
    NotFound(String),

    #[error("remote payload malformed at byte {offset}: {message}")]
    Payload { offset: usize, message: String },

    #[error("remote data has only {available} coefficients, {requested} requested")]
    PartialData { requested: usize, available: usize },

    #[error("network unavailable: {0}")]
    Network(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit status: 1 numeric/validation, 2 usage/config, 3 I/O or network.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::AtCharacter { source, .. } => source.exit_code(),
            Error::NotPrime { .. }
            | Error::ModulusTooSmall(_)
            | Error::NotCoprime { .. }
            | Error::CharacterKind { .. }
            | Error::SigmaOutOfRange(_)
            | Error::InvalidParameter(_) => 2,
            Error::Io { .. }
            | Error::Network(_)
            | Error::NotFound(_)
            | Error::Payload { .. }
            | Error::PartialData { .. }
            | Error::Csv(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
