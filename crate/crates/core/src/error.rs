//! Error type shared by every fallible operation in this crate.

use alloc::string::{String, ToString};
use core::fmt;

/// Errors produced by tuning, frequency-analysis, simulation, and metrics
/// routines.
///
/// The two broad classes matter to callers: [`Error::Invalid`] means an input
/// was rejected before any computation ran, while the remaining variants
/// report numeric failures encountered during a computation.
#[derive(Debug, Clone, PartialEq)]
#[non_exhaustive]
pub enum Error {
    /// An input failed a precondition check (out-of-range parameter,
    /// malformed profile or scenario, window outside a trace, ...).
    Invalid(String),
    /// A tuning specification places the derivative-time tangent argument
    /// within the guard distance of a tangent pole (an odd multiple of π/2),
    /// where the formula degenerates.
    DegenerateSpec {
        /// The offending tangent argument, in radians.
        tangent_argument: f64,
    },
    /// A simulated signal left the finite floating-point range.
    Diverged {
        /// Step index at which the first non-finite value appeared.
        step: usize,
        /// Simulation time, in seconds, of that step.
        time: f64,
    },
}

impl Error {
    /// Builds an [`Error::Invalid`] from anything displayable.
    pub(crate) fn invalid(msg: impl fmt::Display) -> Self {
        Error::Invalid(msg.to_string())
    }

    /// True when the error reports a rejected input rather than a numeric
    /// failure; useful for mapping to process exit codes.
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::Invalid(_))
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Invalid(msg) => f.write_str(msg),
            Error::DegenerateSpec { tangent_argument } => write!(
                f,
                "degenerate specification: tangent argument {tangent_argument} rad is within \
                 the guard distance of a tangent pole (odd multiple of pi/2)"
            ),
            Error::Diverged { step, time } => write!(
                f,
                "simulation diverged: non-finite signal at step {step} (t = {time} s)"
            ),
        }
    }
}

impl core::error::Error for Error {}

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
