//! Comparison constants for the first-order profile inequalities:
//! gamma_n, lambda (positive-curvature and flat variants), and the
//! resulting improvement factors alpha and alpha'.
//!
//! Everything is evaluated by adaptive quadrature with the kernel
//! defaults; closed forms appear only in tests as oracles.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::{integrate, QuadratureSpec};
use crate::spaceform::ck;

fn check_dimension(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::domain("dimension must be at least 2"));
    }
    Ok(())
}

/// gamma_n = int_{-pi/2}^{pi/2} cos^(n-1) t dt.
pub fn gamma_n(n: u32) -> Result<f64> {
    check_dimension(n)?;
    integrate(
        |t| t.cos().powi(n as i32 - 1),
        -PI / 2.0,
        PI / 2.0,
        &QuadratureSpec::default(),
    )
}

/// lambda^kappa_{n,d} = int_{-d/2}^{d/2} c_kappa^(n-1)(t) dt for a
/// positive curvature bound kappa and a diameter d within the
/// Bonnet-Myers range d <= pi / sqrt(kappa).
pub fn lambda_kappa(n: u32, kappa: f64, d: f64) -> Result<f64> {
    check_dimension(n)?;
    if !(kappa > 0.0) {
        return Err(Error::domain("curvature bound must be positive"));
    }
    if !(d > 0.0 && d <= PI / kappa.sqrt() * (1.0 + 1e-12)) {
        return Err(Error::domain(format!(
            "diameter must lie in (0, pi/sqrt(kappa)], got {d}"
        )));
    }
    integrate(
        |t| ck(kappa, t).powi(n as i32 - 1),
        -d / 2.0,
        d / 2.0,
        &QuadratureSpec::default(),
    )
}

/// alpha(n, d) = (gamma_n / lambda^1_{n,d})^(1/n), the improvement
/// factor over the plain positive-curvature comparison; alpha >= 1 with
/// equality exactly at d = pi.
pub fn alpha(n: u32, d: f64) -> Result<f64> {
    if !(d > 0.0 && d <= PI * (1.0 + 1e-12)) {
        return Err(Error::domain(format!(
            "diameter must lie in (0, pi], got {d}"
        )));
    }
    Ok((gamma_n(n)? / lambda_kappa(n, 1.0, d)?).powf(1.0 / n as f64))
}

/// lambda^0_{n,d} = int_0^d (1 + t^2)^((n-1)/2) dt, the flat-case
/// constant; increasing in d.
pub fn lambda0(n: u32, d: f64) -> Result<f64> {
    check_dimension(n)?;
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::domain(format!("diameter must be positive, got {d}")));
    }
    integrate(
        |t| (1.0 + t * t).powf((n as f64 - 1.0) / 2.0),
        0.0,
        d,
        &QuadratureSpec::default(),
    )
}

/// alpha'(n, d) = (gamma_n / lambda^0_{n,d})^(1/n); decreasing in d.
pub fn alpha_prime(n: u32, d: f64) -> Result<f64> {
    Ok((gamma_n(n)? / lambda0(n, d)?).powf(1.0 / n as f64))
}

/// One assembled row of comparison constants for a dimension, curvature
/// bound, and diameter.
#[derive(Debug, Clone, Copy)]
pub struct ComparisonConstants {
    pub n: u32,
    pub kappa: f64,
    pub d: f64,
    pub gamma_n: f64,
    pub lambda: f64,
    /// The improvement factor: alpha for kappa = 1, alpha' for kappa = 0,
    /// absent for other positive kappa (the factor is normalized to unit
    /// curvature).
    pub alpha: Option<f64>,
}

impl ComparisonConstants {
    pub fn evaluate(n: u32, kappa: f64, d: f64) -> Result<Self> {
        if kappa < 0.0 {
            return Err(Error::domain(
                "first-order comparison constants are defined for kappa >= 0",
            ));
        }
        let gamma = gamma_n(n)?;
        let (lambda, alpha_value) = if kappa == 0.0 {
            let l = lambda0(n, d)?;
            (l, Some((gamma / l).powf(1.0 / n as f64)))
        } else {
            let l = lambda_kappa(n, kappa, d)?;
            let a = ((kappa - 1.0).abs() < 1e-12).then(|| (gamma / l).powf(1.0 / n as f64));
            (l, a)
        };
        Ok(ComparisonConstants {
            n,
            kappa,
            d,
            gamma_n: gamma,
            lambda,
            alpha: alpha_value,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_small_dimensions() {
        assert!((gamma_n(2).unwrap() - 2.0).abs() < 1e-12);
        assert!((gamma_n(3).unwrap() - PI / 2.0).abs() < 1e-12);
        assert!((gamma_n(4).unwrap() - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn wallis_recursion() {
        // gamma_n = gamma_{n-2} (n-2)/(n-1)
        for n in 4..=12 {
            let g = gamma_n(n).unwrap();
            let prev = gamma_n(n - 2).unwrap();
            assert!(
                (g - prev * (n as f64 - 2.0) / (n as f64 - 1.0)).abs() <= 1e-10,
                "n={n}"
            );
        }
    }

    #[test]
    fn lambda_coincides_with_gamma_at_full_diameter() {
        assert!((lambda_kappa(2, 1.0, PI).unwrap() - 2.0).abs() < 1e-10);
        assert!((lambda_kappa(3, 1.0, PI).unwrap() - PI / 2.0).abs() < 1e-10);
    }

    #[test]
    fn lambda_half_diameter() {
        // int_{-pi/4}^{pi/4} cos = 2 sin(pi/4) = sqrt(2)
        assert!((lambda_kappa(2, 1.0, PI / 2.0).unwrap() - 2.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn alpha_values() {
        for n in 2..=8 {
            assert!((alpha(n, PI).unwrap() - 1.0).abs() <= 1e-10, "n={n}");
        }
        assert!((alpha(2, PI / 2.0).unwrap() - 2.0f64.powf(0.25)).abs() < 1e-10);
        assert!((alpha(2, PI / 2.0).unwrap() - 1.189_207).abs() < 1e-6);
        // lambda^1_{3, pi/2} = pi/4 + 1/2 in closed form.
        let expected = ((PI / 2.0) / (PI / 4.0 + 0.5)).powf(1.0 / 3.0);
        assert!((alpha(3, PI / 2.0).unwrap() - expected).abs() < 1e-10);
    }

    #[test]
    fn flat_lambda_closed_forms() {
        assert!((lambda0(3, 1.0).unwrap() - 4.0 / 3.0).abs() < 1e-12);
        let expected = (2.0f64.sqrt() + (1.0 + 2.0f64.sqrt()).ln()) / 2.0;
        assert!((lambda0(2, 1.0).unwrap() - expected).abs() < 1e-12);
        assert!((expected - 1.147_793).abs() < 1e-6);
    }

    #[test]
    fn flat_lambda_vanishes_with_diameter() {
        assert!(lambda0(2, 1e-9).unwrap() < 2e-9);
        assert!(alpha_prime(2, 1e-9).unwrap() > 1e3);
    }

    #[test]
    fn monotone_in_diameter() {
        let mut prev_pos = 0.0;
        let mut prev_flat = 0.0;
        for k in 1..=64 {
            let d = PI * k as f64 / 64.0;
            let l = lambda_kappa(2, 1.0, d).unwrap();
            let l0 = lambda0(2, d).unwrap();
            assert!(l > prev_pos, "lambda^1 not increasing at d={d}");
            assert!(l0 > prev_flat, "lambda^0 not increasing at d={d}");
            prev_pos = l;
            prev_flat = l0;
        }
    }

    #[test]
    fn alpha_at_least_one_on_diameter_grid() {
        for n in [2, 3, 5] {
            for k in 1..=64 {
                let d = PI * k as f64 / 64.0;
                assert!(alpha(n, d).unwrap() >= 1.0 - 1e-12, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn assembled_rows() {
        let row = ComparisonConstants::evaluate(2, 1.0, PI / 2.0).unwrap();
        assert!((row.alpha.unwrap() - 2.0f64.powf(0.25)).abs() < 1e-10);
        let flat = ComparisonConstants::evaluate(2, 0.0, 1.0).unwrap();
        assert!(flat.alpha.unwrap().is_finite());
        assert!(ComparisonConstants::evaluate(2, -1.0, 1.0).is_err());
    }
}
