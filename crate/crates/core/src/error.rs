use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

/// A point where `ζ'/ζ` (or one of its ingredients) is singular.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum Singularity {
    /// The simple pole of ζ at s = 1.
    Pole,
    /// A tabulated critical-line zero ½ + iγ (γ may be negative for the conjugate).
    Zero { index: usize, gamma: f64 },
    /// A trivial zero at s = −2k.
    TrivialZero(u32),
}

impl Singularity {
    pub fn location(&self) -> Complex64 {
        match *self {
            Singularity::Pole => Complex64::new(1.0, 0.0),
            Singularity::Zero { gamma, .. } => Complex64::new(0.5, gamma),
            Singularity::TrivialZero(k) => Complex64::new(-2.0 * k as f64, 0.0),
        }
    }
}

impl fmt::Display for Singularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Singularity::Pole => write!(f, "pole at s = 1"),
            Singularity::Zero { index, gamma } => {
                write!(f, "zero #{} at 1/2 {:+}i", index + 1, gamma)
            }
            Singularity::TrivialZero(k) => write!(f, "trivial zero at s = -{}", 2 * k),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("s = {0} is within the exclusion radius of the pole at s = 1")]
    PoleAtOne(Complex64),

    #[error("error budget {target:e} cannot be met (estimate {estimate:e})")]
    PrecisionExhausted { estimate: f64, target: f64 },

    #[error("{point} lies {distance:e} from the {which}")]
    NearSingularity {
        which: Singularity,
        point: Complex64,
        distance: f64,
    },

    #[error("digamma pole at non-positive integer {0}")]
    PoleAtNonpositiveInteger(Complex64),

    #[error("argument of zero is undefined")]
    ZeroArgument,

    #[error(
        "sign-change census found {sign_changes} zeros up to {height} but the argument count is {audited}"
    )]
    MissedZeroSuspected {
        height: f64,
        sign_changes: usize,
        audited: i64,
    },

    #[error("height {height} is within accuracy of a zero ordinate {gamma}")]
    AmbiguousHeight { height: f64, gamma: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("zero table format error at line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("zero table checksum mismatch: footer {expected}, content {found}")]
    ChecksumMismatch { expected: String, found: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("integration path passes {distance:e} from the {which}")]
    SingularityOnPath { which: Singularity, distance: f64 },

    #[error("quadrature error {achieved:e} exceeds requested {requested:e}")]
    ToleranceNotMet { achieved: f64, requested: f64 },

    #[error("edge {edge} of the rectangle passes {distance:e} from the {which}")]
    BoundarySingularity {
        edge: &'static str,
        which: Singularity,
        distance: f64,
    },

    #[error("zero table (complete to {max_height}) is too short: {reason}")]
    TableTooShort { max_height: f64, reason: String },

    #[error("arctan addition is degenerate: x*y = {product} is too close to 1")]
    DegenerateProduct { product: f64 },

    #[error("telescoping step {0} is degenerate (1 + f(k+1)f(k) ~ 0)")]
    DegenerateStep(usize),

    #[error("Riccati denominator vanished at step {0}")]
    DenominatorVanished(usize),

    #[error("no zero table available: {0}")]
    MissingTable(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("serialization error: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
