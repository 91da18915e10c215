use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("family index `n` is unbound")]
    UnboundIndex,

    #[error("indeterminate form {0}")]
    Indeterminate(&'static str),

    #[error("essential singularity: {0} evaluated at infinity")]
    EssentialSingularity(&'static str),

    #[error("point outside the map's domain: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("divisor point within tolerance of the circle |z| = {radius} near angle {angle}")]
    CircleProximity { radius: f64, angle: f64 },

    #[error("no convergence: {0}")]
    NonConvergence(String),

    #[error("cell budget exhausted after {0} cells")]
    CellBudget(usize),

    #[error("multiplicity {0} exceeds the cap of 32")]
    MultiplicityCap(i64),
}

pub type Result<T> = std::result::Result<T, Error>;
