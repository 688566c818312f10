use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("base must satisfy 0 < |q| < 1 (got |q| = {modulus})")]
    InvalidBase { modulus: f64 },

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(&'static str),

    #[error("series not converged after {terms} terms")]
    MaxTermsExceeded { terms: usize },

    #[error("argument must be nonzero")]
    ZeroArgument,

    #[error("evaluation hits a pole (index {index})")]
    PoleError { index: i64 },

    #[error("denominator Pochhammer symbol vanishes at n = {index}")]
    DenominatorPole { index: usize },

    #[error("|x| = {modulus} outside the disc of convergence |x| < {radius}")]
    RadiusError { modulus: f64, radius: f64 },

    #[error("argument lies on the branch cut (-inf, 0]")]
    BranchError,

    #[error("order is excluded (integer or half-integer where the formula degenerates)")]
    IntegerOrderError,

    #[error("point is within log-distance {log_distance:e} of a theta zero spiral (k = {k})")]
    SpiralError { log_distance: f64, k: i64 },

    #[error("contour radius {radius} must lie below r0 = {limit}")]
    ContourTooLarge { radius: f64, limit: f64 },

    #[error("trapezoid rule not converged with {nodes} nodes")]
    NonConvergent { nodes: usize },

    #[error("recurrence divides by a vanishing factor at n = {index}")]
    DegenerateRecurrence { index: usize },

    #[error("value leaves the double-precision range")]
    ScaleOverflow,

    #[error("order makes sin(2 nu pi) vanish")]
    DegenerateOrder,
}

impl Error {
    /// Stable identifier used by the command line front end.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidBase { .. } => "InvalidBase",
            Error::InvalidTolerance(_) => "InvalidTolerance",
            Error::MaxTermsExceeded { .. } => "MaxTermsExceeded",
            Error::ZeroArgument => "ZeroArgument",
            Error::PoleError { .. } => "PoleError",
            Error::DenominatorPole { .. } => "DenominatorPole",
            Error::RadiusError { .. } => "RadiusError",
            Error::BranchError => "BranchError",
            Error::IntegerOrderError => "IntegerOrderError",
            Error::SpiralError { .. } => "SpiralError",
            Error::ContourTooLarge { .. } => "ContourTooLarge",
            Error::NonConvergent { .. } => "NonConvergent",
            Error::DegenerateRecurrence { .. } => "DegenerateRecurrence",
            Error::ScaleOverflow => "ScaleOverflow",
            Error::DegenerateOrder => "DegenerateOrder",
        }
    }
}
