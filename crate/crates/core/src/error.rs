use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(&'static str),
    #[error("invalid surface layout: {0}")]
    InvalidLayout(&'static str),
    #[error("invalid radio configuration: {0}")]
    InvalidRadio(&'static str),
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("far-field channel needs at least one path cluster")]
    EmptyClusters,
    #[error("near-field geometry is degenerate: relay antenna lies in the surface plane")]
    DegenerateNearField,
    #[error("near-field gain violates energy conservation: M*eta = {0}")]
    ModelValidity(f64),
    #[error("invalid rate inputs: {0}")]
    InvalidInputs(&'static str),
    #[error("infeasible target: {0}")]
    Infeasible(&'static str),
    #[error("invalid polynomial coefficients: {0}")]
    InvalidCoefficients(&'static str),
    #[error("oracle run needs at least one trial")]
    NoTrials,
}
