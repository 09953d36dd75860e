//! Isoperimetric profiles of model Riemannian manifolds and the
//! comparison inequalities they satisfy.
//!
//! The crate computes profile functions of space forms and rotationally
//! symmetric metrics, the diameter-dependent comparison constants, and
//! verifies at grid scale that profiles are viscosity supersolutions of
//! the second-order equation
//!
//! ```text
//! -psi'' psi = (n-1) (kappa + (psi'/(n-1))^2)
//! ```
//!
//! and of the first-order Hamilton-Jacobi-type equation
//!
//! ```text
//! psi (1 + (1/kappa)(psi'/(n-1))^2)^((n-1)/2) = 1/lambda
//! ```
//!
//! from which the Levy-Gromov and Berard-Besson-Gallot lower bounds, the
//! Morgan-Johnson upper bound, and ratio monotonicity follow by maximum
//! principles.
//!
//! Module map:
//! - [`numerics`]: quadrature, root finding, finite differences,
//!   1-D minimization.
//! - [`spaceform`]: geodesic balls and profiles of the constant-curvature
//!   models.
//! - [`constants`]: gamma_n, the lambda diameter constants, alpha,
//!   alpha'.
//! - [`warped`]: rotationally symmetric test metrics, Ricci bounds, cap
//!   and band candidate profiles, the ball comparison, Heintze-Karcher.
//! - [`viscosity`]: residuals, subjets, the supersolution checker, and
//!   the comparison-principle checker.
//!
//! The round-sphere profile solves both equations exactly, which anchors
//! every checker:
//!
//! ```
//! use isoprofile::viscosity::{check_supersolution, CheckSpec};
//! use isoprofile::{cosine_grid, DifferentialInequality, SpaceForm};
//!
//! let sphere = SpaceForm::new(2, 1.0)?;
//! let profile = sphere.h1_profile()?;
//! let ineq = DifferentialInequality::second_order(2, 1.0)?;
//! let report =
//!     check_supersolution(&profile, &ineq, &cosine_grid(64), &CheckSpec::closed_form())?;
//! assert!(report.global_pass);
//! # Ok::<(), isoprofile::Error>(())
//! ```

// Validations deliberately use negated comparisons (`!(a < b)`) so that
// NaN inputs fail them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod error;
pub mod numerics;
pub mod profile;
pub mod spaceform;
pub mod viscosity;
pub mod warped;

pub use error::{Error, Result};
pub use profile::{cosine_grid, cosine_grid_on, uniform_grid, Normalization, Profile, ProfileEval};
pub use spaceform::SpaceForm;
pub use viscosity::{DifferentialInequality, SupersolutionReport};
pub use warped::{Pole, Topology, WarpedMetric};
