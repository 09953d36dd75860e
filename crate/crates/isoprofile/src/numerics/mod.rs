//! Shared numerical kernel: adaptive quadrature, bracketed root finding,
//! finite differences, and 1-D minimization.
//!
//! Every routine is a pure function of its inputs and safe to call
//! concurrently.

mod deriv;
mod minimize;
mod quadrature;
mod roots;

pub use deriv::fd_derivatives;
pub use minimize::minimize_1d;
pub use quadrature::integrate;
pub(crate) use quadrature::kronrod15;
pub use roots::{find_root, RootSpec};

use crate::error::{Error, Result};

/// Tolerances and budget for [`integrate`].
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    /// Relative tolerance on the integral value.
    pub rel_tol: f64,
    /// Absolute tolerance, dominant when the integral is near zero.
    pub abs_tol: f64,
    /// Maximum number of live segments before giving up.
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_subdivisions: 256,
        }
    }
}

impl QuadratureSpec {
    pub(crate) fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::domain("quadrature tolerances must be positive"));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::domain("subdivision budget must be at least 1"));
        }
        Ok(())
    }
}
