use thiserror::Error;

/// Errors raised by the tensor algebra and field evaluation layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A contraction or conversion was attempted between incompatible index
    /// placements. Mismatches are rejected rather than patched with metric
    /// factors.
    #[error("variance mismatch: {0}")]
    VarianceMismatch(&'static str),

    /// An operation requiring an antisymmetric tensor received one that is
    /// not antisymmetric beyond tolerance.
    #[error("input is not antisymmetric (residual {residual:e} > tol {tol:e})")]
    NotAntisymmetric { residual: f64, tol: f64 },

    /// Boost speed above the configured guard.
    #[error("|v|/c = {beta} exceeds the guard {guard}")]
    SpeedGuard { beta: f64, guard: f64 },

    /// The exact-derivative channel was requested from a field that does not
    /// provide one.
    #[error("exact derivative channel not available")]
    NoExactChannel,

    /// Evaluation attempted inside a configuration's singular set.
    #[error("event lies in the singular set of the configuration")]
    SingularPoint,

    /// An operation defined only for vacuum configurations (`G = F`) was
    /// applied to something else.
    #[error("vacuum configuration required (D = E, B = H, no sources)")]
    NotVacuum,

    /// Medium with `eps*mu = 0`; the constitutive tensor is not invertible.
    #[error("degenerate medium: eps*mu = 0")]
    DegenerateMedium,

    /// A finite-difference refinement did not reduce the residual.
    #[error("residuals do not decrease under refinement")]
    FailedConvergence,

    /// A field evaluation returned a non-finite value.
    #[error("non-finite sample encountered")]
    NonFiniteSample,

    /// Malformed input that does not fit a more specific variant.
    #[error("invalid input: {0}")]
    InvalidInput(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
