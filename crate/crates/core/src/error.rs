use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("root finder did not converge (residual {residual:e})")]
    NonConvergence { best: Vec<Complex64>, residual: f64 },

    #[error("quadrature tolerance not met: estimate {estimate:e} for value {value}")]
    ToleranceNotMet { value: Complex64, estimate: f64 },

    #[error("quadrature exceeded {limit} subdivisions (estimate {estimate:e})")]
    MaxSubdivisions { value: Complex64, estimate: f64, limit: usize },

    #[error("root at lambda = {0} lies on the unit circle")]
    Unclassifiable(Complex64),

    #[error("spectrum has no resonant state")]
    NoResonance,

    #[error("ratio denominator underflows at t = {0}")]
    Underflow(f64),

    #[error("bracket [{lo}, {hi}] does not straddle an exceptional point")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("green function pole at E = {0}")]
    PoleProximity(f64),

    #[error("unexpected root pattern: {0:?}")]
    UnexpectedRootPattern(Vec<Complex64>),

    #[error("erfc branch check failed for {component}: closed form {closed} vs quadrature {quadrature}")]
    BranchCheckFailed { component: &'static str, closed: Complex64, quadrature: Complex64 },

    #[error("state index {0} out of range")]
    StateIndex(usize),

    #[error("unknown representation '{0}'")]
    UnknownRepresentation(String),
}

impl Error {
    /// True for errors caused by the physical regime rather than numerics.
    pub fn is_regime(&self) -> bool {
        matches!(self, Error::NoResonance | Error::NoSignChange { .. } | Error::UnexpectedRootPattern(_))
    }
}
