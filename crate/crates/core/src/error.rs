use thiserror::Error;

/// Error type shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("deformation parameter must lie in (0, 1], got {0}")]
    InvalidDeformation(f64),

    /// The q-exponential series has radius of convergence 1/(1 - q^2) for
    /// q < 1; arguments at or beyond it must be rejected, never truncated.
    #[error("series argument {x} lies outside the radius of convergence {radius}")]
    DivergentSeries { x: f64, radius: f64 },

    #[error("|alpha|^2 = {alpha_sq} must lie below the radius of convergence {radius}")]
    NonNormalizable { alpha_sq: f64, radius: f64 },

    #[error("odd cat state with alpha = 0 vanishes identically")]
    NullState,

    #[error("Mandel parameter is undefined at the vacuum (zero mean photon number)")]
    UndefinedAtVacuum,

    #[error("q-factorial exceeded the f64 range at n = {n}")]
    FactorialOverflow { n: u32 },

    #[error("series did not reach tolerance {tol:e} within {max_terms} terms")]
    ConvergenceFailure { tol: f64, max_terms: usize },

    #[error("matrix dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("matrix 1-norm {norm} exceeds the supported maximum {max}")]
    NormTooLarge { norm: f64, max: f64 },

    #[error("dimension mismatch: vector has {vec_dim} entries, operator is {op_dim}x{op_dim}")]
    DimensionMismatch { vec_dim: usize, op_dim: usize },

    #[error("no sign change of the uncertainty gap over [{lo}, {hi}]")]
    NoRoot { lo: f64, hi: f64 },

    #[error("invalid bracket [{lo}, {hi}]")]
    InvalidBracket { lo: f64, hi: f64 },
}
