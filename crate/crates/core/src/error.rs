use thiserror::Error;

use crate::fta::ContinuationTrace;

/// Failures raised by the solver stack.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// The argument of zero is undefined.
    #[error("argument of zero is undefined")]
    ZeroArgument,

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Every coefficient past the constant term vanishes at the expansion point.
    #[error("function is locally constant at the expansion point")]
    LocallyConstant,

    /// The argument handed to a root branch landed on (or next to) its cut.
    #[error("branch {branch:?} evaluated near its discontinuity ray (Arg = {angle})")]
    BranchViolation { branch: crate::Branch, angle: f64 },

    #[error("fixed-point iteration did not reach residual {tol:e} in {iterations} iterations (residual {residual:e})")]
    NoConvergence {
        iterations: usize,
        residual: f64,
        tol: f64,
    },

    #[error("iterate left the certified disk: |xi| = {modulus:e} > rho = {rho:e}")]
    LeftDisk { modulus: f64, rho: f64 },

    #[error("target is outside the certified disk: |w - w0| = {distance:e} >= r = {radius:e}")]
    OutsideDisk { distance: f64, radius: f64 },

    #[error("continuation exhausted its budget of {steps} steps")]
    StepLimit {
        steps: usize,
        trace: Box<ContinuationTrace>,
    },

    #[error("trace point {index} has modulus {modulus} beyond the bound {bound}")]
    BoundViolation {
        index: usize,
        modulus: f64,
        bound: f64,
    },

    #[error("best candidate has residual {residual:e} above tolerance {tol:e}")]
    ResidualTooLarge { residual: f64, tol: f64 },

    #[error("cleared polynomial has no root away from the origin")]
    DegenerateRoot,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
