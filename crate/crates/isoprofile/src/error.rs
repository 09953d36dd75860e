use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by the numerical kernels and the geometry layers on
/// top of them.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Adaptive quadrature ran out of subdivisions. Carries the best
    /// estimate so callers can decide whether it is still usable.
    #[error("quadrature did not converge after {subdivisions} subdivisions (best estimate {best:e}, error bound {error:e})")]
    QuadratureBudget {
        best: f64,
        error: f64,
        subdivisions: usize,
    },

    /// Bracketed root finding requires a sign change over the bracket.
    #[error("no sign change over bracket [{a}, {b}]: f(a) = {fa:e}, f(b) = {fb:e}")]
    BracketSign { a: f64, b: f64, fa: f64, fb: f64 },

    /// Root iteration exhausted its budget.
    #[error("root iteration did not converge after {max_iter} iterations (best {best:e})")]
    RootBudget { best: f64, max_iter: usize },

    /// Finite differences need an interior stencil.
    #[error("index {index} is not interior to a grid of {len} points")]
    BoundaryIndex { index: usize, len: usize },

    /// A scalar argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A warp function violates the smooth-closure conditions of its
    /// topology, or is not positive in the interior.
    #[error("invalid warped metric: {0}")]
    InvalidMetric(String),

    /// Mean curvature of a distance sphere is undefined at the poles.
    #[error("distance sphere degenerates at radius {0:e}")]
    SingularRadius(f64),

    /// Profile values must stay positive.
    #[error("profile must be positive, got {0:e}")]
    Positivity(f64),

    /// Two objects were expected to share a grid.
    #[error("grid mismatch: {0}")]
    Alignment(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
