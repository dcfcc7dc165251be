use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("{what} = {value} is outside the domain of the operation")]
    Domain { what: &'static str, value: f64 },

    /// A constructor received parameters that violate a type invariant.
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),

    /// The derivative was requested at a declared discontinuity.
    #[error("derivative is undefined at the discontinuity x = {x}")]
    SingularPoint { x: f64 },

    /// The window carries (numerically) no probability mass.
    #[error("window ({a}, {b}] has no probability mass under the base distribution")]
    EmptyWindow { a: f64, b: f64 },

    /// All consecutive output differences vanish, so the index is 0/0.
    #[error("degenerate sample: all consecutive output differences are zero")]
    DegenerateSample,

    /// The function has neither jumps nor a non-vanishing derivative on the window.
    #[error("degenerate function: total variation {total_variation:e} on the window is zero")]
    DegenerateFunction { total_variation: f64 },

    /// Adaptive quadrature exhausted its depth before reaching tolerance.
    #[error("quadrature did not converge on [{a}, {b}]: error estimate {error:e}")]
    NonConvergence { a: f64, b: f64, error: f64 },

    /// The integrand produced NaN or an infinity.
    #[error("integrand is not finite at x = {x}")]
    NonFiniteIntegrand { x: f64 },
}
