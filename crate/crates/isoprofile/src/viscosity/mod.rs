//! Viscosity-supersolution verification for the profile inequalities.
//!
//! Two families of differential inequalities are tested. The second-order
//! family reads, for a supersolution psi > 0,
//!
//! ```text
//! -psi'' psi >= (n-1) (kappa + (psi'/(n-1))^2)
//! ```
//!
//! and the first-order family, with lambda one of the diameter constants,
//!
//! ```text
//! psi (1 + (1/kappa)(psi'/(n-1))^2)^((n-1)/2) >= 1/lambda    (kappa > 0)
//! psi (1 + (psi'/(n-1))^2)^((n-1)/2)          >= 1/lambda    (kappa = 0)
//! ```
//!
//! A residual is the left side minus the right side evaluated on a test
//! triple (value, slope, curvature); supersolutions have residual >= 0
//! against every admissible test triple touching from below.

mod check;
mod comparison;
mod subjet;

pub use check::{
    check_supersolution, CheckSpec, PointVerdict, SupersolutionReport, Verdict, Witness,
};
pub use comparison::{comparison_check, ComparisonMode, ComparisonPoint, ComparisonReport};
pub use subjet::{subjet_at, Subjet, SubjetSpec};

use std::f64::consts::PI;

use crate::constants;
use crate::error::{Error, Result};

/// Which differential inequality to test, with residual orientation
/// "supersolution means residual >= 0".
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DifferentialInequality {
    /// -X psi - (n-1)(kappa + (p/(n-1))^2) >= 0.
    SecondOrder { n: u32, kappa: f64 },
    /// psi (1 + (1/kappa)(p/(n-1))^2)^((n-1)/2) - 1/lambda >= 0 with
    /// lambda = lambda^kappa_{n,d}, kappa > 0.
    FirstOrderPositive {
        n: u32,
        kappa: f64,
        d: f64,
        lambda: f64,
    },
    /// psi (1 + (p/(n-1))^2)^((n-1)/2) - 1/lambda >= 0 with
    /// lambda = lambda^0_{n,d}.
    FirstOrderZero { n: u32, d: f64, lambda: f64 },
}

impl DifferentialInequality {
    pub fn second_order(n: u32, kappa: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain("dimension must be at least 2"));
        }
        if !kappa.is_finite() {
            return Err(Error::domain("curvature bound must be finite"));
        }
        Ok(DifferentialInequality::SecondOrder { n, kappa })
    }

    /// First-order inequality for a positive curvature bound; computes
    /// lambda^kappa_{n,d} from the constants module.
    pub fn first_order_positive(n: u32, kappa: f64, d: f64) -> Result<Self> {
        let lambda = constants::lambda_kappa(n, kappa, d)?;
        Self::first_order_positive_with_lambda(n, kappa, d, lambda)
    }

    /// First-order inequality with a caller-supplied lambda (tests pass
    /// closed-form values here).
    pub fn first_order_positive_with_lambda(
        n: u32,
        kappa: f64,
        d: f64,
        lambda: f64,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain("dimension must be at least 2"));
        }
        if !(kappa > 0.0) {
            return Err(Error::domain("curvature bound must be positive"));
        }
        if !(d > 0.0 && d <= PI / kappa.sqrt() * (1.0 + 1e-12)) {
            return Err(Error::domain(format!(
                "diameter must lie in (0, pi/sqrt(kappa)], got {d}"
            )));
        }
        if !(lambda > 0.0) {
            return Err(Error::domain("lambda must be positive"));
        }
        Ok(DifferentialInequality::FirstOrderPositive {
            n,
            kappa,
            d,
            lambda,
        })
    }

    /// First-order inequality for a non-negative Ricci bound.
    pub fn first_order_zero(n: u32, d: f64) -> Result<Self> {
        let lambda = constants::lambda0(n, d)?;
        if n < 2 {
            return Err(Error::domain("dimension must be at least 2"));
        }
        Ok(DifferentialInequality::FirstOrderZero { n, d, lambda })
    }

    pub fn dimension(&self) -> u32 {
        match *self {
            DifferentialInequality::SecondOrder { n, .. }
            | DifferentialInequality::FirstOrderPositive { n, .. }
            | DifferentialInequality::FirstOrderZero { n, .. } => n,
        }
    }

    pub fn is_second_order(&self) -> bool {
        matches!(self, DifferentialInequality::SecondOrder { .. })
    }
}

/// Second-order residual -X psi - (n-1)(kappa + (p/(n-1))^2) at the test
/// triple (psi, p, X).
pub fn residual_second_order(
    ineq: &DifferentialInequality,
    psi: f64,
    slope: f64,
    curvature: f64,
) -> Result<f64> {
    let DifferentialInequality::SecondOrder { n, kappa } = *ineq else {
        return Err(Error::domain("expected a second-order inequality"));
    };
    if !(psi > 0.0) {
        return Err(Error::Positivity(psi));
    }
    let nm1 = (n - 1) as f64;
    let scaled = slope / nm1;
    Ok(-curvature * psi - nm1 * (kappa + scaled * scaled))
}

/// First-order residual psi (1 + c (p/(n-1))^2)^((n-1)/2) - 1/lambda,
/// with c = 1/kappa in the positive-curvature variant and c = 1 in the
/// flat variant.
pub fn residual_first_order(ineq: &DifferentialInequality, psi: f64, slope: f64) -> Result<f64> {
    let (n, inv_kappa, lambda) = match *ineq {
        DifferentialInequality::FirstOrderPositive {
            n, kappa, lambda, ..
        } => (n, 1.0 / kappa, lambda),
        DifferentialInequality::FirstOrderZero { n, lambda, .. } => (n, 1.0, lambda),
        DifferentialInequality::SecondOrder { .. } => {
            return Err(Error::domain("expected a first-order inequality"));
        }
    };
    if !(psi > 0.0) {
        return Err(Error::Positivity(psi));
    }
    let nm1 = (n - 1) as f64;
    let scaled = slope / nm1;
    Ok(psi * (1.0 + inv_kappa * scaled * scaled).powf(nm1 / 2.0) - 1.0 / lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::cosine_grid;
    use crate::spaceform::SpaceForm;

    #[test]
    fn equator_of_unit_two_sphere_is_exact() {
        let ineq = DifferentialInequality::second_order(2, 1.0).unwrap();
        let r = residual_second_order(&ineq, 0.5, 0.0, -2.0).unwrap();
        assert!(r.abs() < 1e-15);
    }

    #[test]
    fn constant_profile_violates_positive_curvature() {
        let flat = DifferentialInequality::second_order(3, 0.0).unwrap();
        assert_eq!(residual_second_order(&flat, 0.7, 0.0, 0.0).unwrap(), 0.0);
        let curved = DifferentialInequality::second_order(3, 1.0).unwrap();
        let r = residual_second_order(&curved, 0.7, 0.0, 0.0).unwrap();
        assert!((r + 2.0).abs() < 1e-15); // -(n-1)
    }

    #[test]
    fn flat_absolute_profile_solves_flat_equation() {
        // psi = n sigma_n^(1/n) v^((n-1)/n) satisfies
        // -psi'' psi = (n-1)(psi'/(n-1))^2 identically.
        for n in [2u32, 4, 6] {
            let sf = SpaceForm::new(n, 0.0).unwrap();
            let ineq = DifferentialInequality::second_order(n, 0.0).unwrap();
            for v in [0.1, 1.0, 7.3] {
                let e = sf.profile_h2(v).unwrap();
                let r = residual_second_order(&ineq, e.value, e.slope, e.curvature).unwrap();
                assert!(r.abs() < 1e-10, "n={n} v={v}: {r}");
            }
        }
    }

    #[test]
    fn hyperbolic_absolute_profile_solves_negative_curvature_equation() {
        let sf = SpaceForm::new(2, -1.0).unwrap();
        let ineq = DifferentialInequality::second_order(2, -1.0).unwrap();
        for v in [0.3, 2.0, 11.0] {
            let e = sf.profile_h2(v).unwrap();
            let r = residual_second_order(&ineq, e.value, e.slope, e.curvature).unwrap();
            assert!(r.abs() < 1e-10, "v={v}: {r}");
        }
    }

    #[test]
    fn sphere_profile_solves_first_order_equation_at_full_diameter() {
        // With lambda = gamma_n the round-sphere profile is an exact
        // solution: psi csc^(n-1) r = omega_{n-1} / |S^n| = 1/gamma_n.
        for n in [2u32, 3, 5] {
            let sf = SpaceForm::new(n, 1.0).unwrap();
            let ineq =
                DifferentialInequality::first_order_positive(n, 1.0, std::f64::consts::PI).unwrap();
            for beta in cosine_grid(17) {
                let e = sf.profile_h1(beta).unwrap();
                let r = residual_first_order(&ineq, e.value, e.slope).unwrap();
                assert!(r.abs() < 1e-10, "n={n} beta={beta}: {r}");
            }
        }
    }

    #[test]
    fn exactness_holds_for_general_positive_curvature() {
        // For any kappa > 0 the space-form profile solves both
        // inequalities exactly when d = pi / sqrt(kappa).
        let kappa = 4.0;
        let sf = SpaceForm::new(3, kappa).unwrap();
        let second = DifferentialInequality::second_order(3, kappa).unwrap();
        let d = std::f64::consts::PI / kappa.sqrt();
        let first = DifferentialInequality::first_order_positive(3, kappa, d).unwrap();
        for beta in cosine_grid(17) {
            let e = sf.profile_h1(beta).unwrap();
            let r2 = residual_second_order(&second, e.value, e.slope, e.curvature).unwrap();
            let r1 = residual_first_order(&first, e.value, e.slope).unwrap();
            assert!(r2.abs() <= 1e-10, "beta={beta}: second-order {r2}");
            assert!(r1.abs() <= 1e-10, "beta={beta}: first-order {r1}");
        }
    }

    #[test]
    fn sphere_fails_smaller_diameter_bound() {
        let sf = SpaceForm::new(2, 1.0).unwrap();
        let ineq = DifferentialInequality::first_order_positive(2, 1.0, std::f64::consts::PI / 2.0)
            .unwrap();
        let e = sf.profile_h1(0.5).unwrap();
        let r = residual_first_order(&ineq, e.value, e.slope).unwrap();
        let expected = 0.5 - 1.0 / 2.0f64.sqrt();
        assert!((r - expected).abs() < 1e-10);
        assert!((r + 0.207_107).abs() < 1e-4);
    }

    #[test]
    fn flat_level_set_of_first_order_equation() {
        let ineq = DifferentialInequality::first_order_zero(2, 1.0).unwrap();
        let DifferentialInequality::FirstOrderZero { lambda, .. } = ineq else {
            unreachable!()
        };
        let r = residual_first_order(&ineq, 1.0 / lambda, 0.0).unwrap();
        assert!(r.abs() < 1e-15);
    }

    #[test]
    fn positivity_is_enforced() {
        let ineq = DifferentialInequality::second_order(2, 1.0).unwrap();
        assert!(matches!(
            residual_second_order(&ineq, -0.1, 0.0, 0.0),
            Err(Error::Positivity(_))
        ));
    }
}
