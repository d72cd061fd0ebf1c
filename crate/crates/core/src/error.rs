use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no reduced parameter for the {0} family")]
    NoReducedParameter(&'static str),
    #[error("force is not odd; the quarter-period condition does not apply")]
    NotOdd,
    #[error("non-monotone potential on (0, A]")]
    NonMonotonePotential,
    #[error("invalid bracket [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    InvalidBracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
    #[error("no bracket found for the quarter-period condition")]
    NoBracket,
    #[error("no convergence: {0}")]
    NoConvergence(&'static str),
    #[error("no positive root")]
    NoPositiveRoot,
    #[error("step size underflow at t = {0}")]
    StepUnderflow(f64),
    #[error("no zero crossing before t = {0}")]
    NoCrossing(f64),
    #[error("scaled limit not converged: tail difference {0:e}")]
    NotConverged(f64),
}
