use thiserror::Error;

/// Errors produced by the geometry, mapping and evaluation routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("side count must be at least 3, got {0}")]
    InvalidSideCount(usize),

    #[error("side index {index} out of range 1..={n}")]
    SideIndexOutOfRange { index: usize, n: usize },

    #[error("height {0} outside [0, 1]")]
    HeightOutOfRange(f64),

    #[error("level set for h = {0} is not a proper arc")]
    DegenerateLevelSet(f64),

    #[error("deviation undefined for h = {h}: too close to the straight-line height {h_hat}")]
    StraightLineBand { h: f64, h_hat: f64 },

    #[error("point {u}, {v} lies outside the unit disk")]
    OutsideDomain { u: f64, v: f64 },

    #[error("no sign change of the deviation on [{lo}, {hi}] for point ({u}, {v})")]
    BracketLost { lo: f64, hi: f64, u: f64, v: f64 },

    #[error("bisection did not converge within {0} iterations")]
    NoConvergence(usize),

    #[error("side {side}: {source}")]
    AtSide {
        side: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid bisection settings: {0}")]
    InvalidSettings(String),

    #[error("finite-difference step must be positive, got {0}")]
    InvalidStep(f64),

    #[error("Bernstein index {index} out of range for degree {degree}")]
    BernsteinIndex { degree: usize, index: usize },

    #[error("height field has {got} entries, expected {expected}")]
    HeightFieldLength { expected: usize, got: usize },

    #[error("invalid control net: {0}")]
    InvalidNet(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("mesh needs at least one ring")]
    InvalidRings,

    #[error("control net has {net} sides but the mesh has {mesh}")]
    SideCountMismatch { net: usize, mesh: usize },

    #[error("light direction must be non-zero")]
    ZeroLight,
}

impl Error {
    /// True for failures of the numerical kernel (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::BracketLost { .. } | Error::NoConvergence(_) => true,
            Error::AtSide { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
