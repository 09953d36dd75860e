//! The geodesic-ball comparison argument and the Heintze-Karcher volume
//! bound.
//!
//! Under Ric >= (n-1) kappa the ball profile I_p about any pole stays
//! below the space-form ball profile, because (volume comparison) balls
//! of equal radius hold less volume and (mean-curvature comparison)
//! distance spheres are no more curved than their space-form
//! counterparts; both make the difference I_p - I_ref non-increasing in
//! the enclosed volume. The checker verifies the conclusion and both
//! ingredients pointwise.

use std::f64::consts::PI;

use crate::constants::lambda_kappa;
use crate::error::{Error, Result};
use crate::numerics::{integrate, QuadratureSpec};
use crate::spaceform::{ck, sk, SpaceForm};

use super::{mean_curvature_sphere, ricci_lower_bound, Pole, WarpedMetric};

/// Which part of the comparison argument failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ingredient {
    /// I_p(beta) <= I_ref(beta).
    BoundaryArea,
    /// Successive differences of I_p - I_ref are non-positive.
    MonotoneDifference,
    /// |B_p(r)| <= |B_ref(r)|.
    BallVolume,
    /// H(r) <= H_ref(r).
    MeanCurvature,
}

impl Ingredient {
    pub fn label(&self) -> &'static str {
        match self {
            Ingredient::BoundaryArea => "boundary-area",
            Ingredient::MonotoneDifference => "monotone-difference",
            Ingredient::BallVolume => "ball-volume",
            Ingredient::MeanCurvature => "mean-curvature",
        }
    }
}

/// One violated inequality with both sides.
#[derive(Debug, Clone, Copy)]
pub struct ComparisonViolation {
    /// Grid volume (or, for the pointwise ingredients, the volume whose
    /// ball radius was tested).
    pub location: f64,
    pub ingredient: Ingredient,
    pub lhs: f64,
    pub rhs: f64,
}

/// Per-grid-point data of the ball comparison.
#[derive(Debug, Clone, Copy)]
pub struct BallComparisonPoint {
    pub beta: f64,
    /// Ball radius about the pole at this volume.
    pub radius: f64,
    pub area: f64,
    pub model_area: f64,
    /// Space-form ball volume at the same radius.
    pub model_volume: f64,
    pub mean_curvature: Option<f64>,
    pub model_mean_curvature: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct BallComparisonReport {
    pub kappa: f64,
    pub points: Vec<BallComparisonPoint>,
    pub violations: Vec<ComparisonViolation>,
    pub global_pass: bool,
    pub tol: f64,
}

/// Compare geodesic-ball profiles of `m` (about the near pole) against
/// the space form of curvature `kappa` on an ascending grid of enclosed
/// volumes. `kappa` must not exceed the certified Ricci bound of `m`.
pub fn ball_comparison_check(
    m: &WarpedMetric,
    kappa: f64,
    grid: &[f64],
    tol: f64,
) -> Result<BallComparisonReport> {
    if grid.len() < 2 {
        return Err(Error::domain("comparison grid needs at least 2 points"));
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::domain("volume grid must be strictly increasing"));
    }
    let certified = ricci_lower_bound(m)?.kappa_star;
    if kappa > certified + 1e-9 {
        return Err(Error::domain(format!(
            "kappa = {kappa} exceeds the certified Ricci bound {certified}"
        )));
    }

    let reference = SpaceForm::new(m.dimension(), kappa)?;
    let model_diameter = reference.diameter();
    let total = m.total_volume();

    let mut points = Vec::with_capacity(grid.len());
    let mut violations = Vec::new();
    let mut previous_difference: Option<f64> = None;

    for &beta in grid {
        if !(beta > 0.0 && beta < total) {
            return Err(Error::domain(format!(
                "grid volume {beta} outside (0, {total})"
            )));
        }
        let radius = m.radius_for_volume(Pole::Zero, beta)?;
        let area = m.sphere_area_at(radius);
        let model_radius = reference.radius_for_volume(beta)?;
        let model_area = reference.ball_area(model_radius)?;

        if area > model_area + tol {
            violations.push(ComparisonViolation {
                location: beta,
                ingredient: Ingredient::BoundaryArea,
                lhs: area,
                rhs: model_area,
            });
        }

        let difference = area - model_area;
        if let Some(prev) = previous_difference {
            if difference - prev > tol {
                violations.push(ComparisonViolation {
                    location: beta,
                    ingredient: Ingredient::MonotoneDifference,
                    lhs: difference,
                    rhs: prev,
                });
            }
        }
        previous_difference = Some(difference);

        // Volume comparison at the warped ball radius.
        let capped_radius = model_diameter.map_or(radius, |d| radius.min(d));
        let model_volume = reference.ball_volume(capped_radius)?;
        if beta > model_volume + tol {
            violations.push(ComparisonViolation {
                location: beta,
                ingredient: Ingredient::BallVolume,
                lhs: beta,
                rhs: model_volume,
            });
        }

        // Mean-curvature comparison where the model sphere exists.
        let model_ok = model_diameter.is_none_or(|d| radius < d * (1.0 - 1e-12));
        let (mean_curvature, model_mean_curvature) = if radius < m.length() && model_ok {
            let h = mean_curvature_sphere(m, radius)?;
            let h_model = ck(kappa, radius) / sk(kappa, radius);
            if h > h_model + tol {
                violations.push(ComparisonViolation {
                    location: beta,
                    ingredient: Ingredient::MeanCurvature,
                    lhs: h,
                    rhs: h_model,
                });
            }
            (Some(h), Some(h_model))
        } else {
            (None, None)
        };

        points.push(BallComparisonPoint {
            beta,
            radius,
            area,
            model_area,
            model_volume,
            mean_curvature,
            model_mean_curvature,
        });
    }

    let global_pass = violations.is_empty();
    Ok(BallComparisonReport {
        kappa,
        points,
        violations,
        global_pass,
        tol,
    })
}

/// The Heintze-Karcher volume bound for a region with normalized
/// boundary area `psi0`, constant mean curvature `mean_curvature`,
/// inradius `r0`, on a manifold of diameter `d` with Ric >= (n-1)
/// (curvature normalized to 1):
///
/// ```text
/// psi0 * int_{r0-d}^{r0} (cos t - H sin t)_+^{n-1} dt
/// ```
///
/// which is at least 1 when the data come from a true isoperimetric
/// minimizer. The positive part has the closed form
/// cos t - H sin t = sqrt(1 + H^2) cos(t + arctan H), so the kink
/// locations are found exactly and only the positive piece is
/// integrated.
pub fn heintze_karcher_bound(
    n: u32,
    d: f64,
    psi0: f64,
    mean_curvature: f64,
    r0: f64,
) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain("dimension must be at least 2"));
    }
    if !(d > 0.0 && d <= PI * (1.0 + 1e-12)) {
        return Err(Error::domain(format!(
            "diameter must lie in (0, pi], got {d}"
        )));
    }
    if !(psi0 > 0.0) {
        return Err(Error::Positivity(psi0));
    }
    if !(mean_curvature.is_finite() && r0.is_finite()) {
        return Err(Error::domain("mean curvature and inradius must be finite"));
    }
    let theta = mean_curvature.atan();
    let lo = (r0 - d).max(-PI / 2.0 - theta);
    let hi = r0.min(PI / 2.0 - theta);
    if lo >= hi {
        return Ok(0.0);
    }
    let integral = integrate(
        |t| {
            (t.cos() - mean_curvature * t.sin())
                .max(0.0)
                .powi(n as i32 - 1)
        },
        lo,
        hi,
        &QuadratureSpec::default(),
    )?;
    Ok(psi0 * integral)
}

/// Closed-form majorant of [`heintze_karcher_bound`]:
/// psi0 (1 + H^2)^((n-1)/2) lambda^1_{n,d}, always at least the integral.
pub fn heintze_karcher_majorant(n: u32, d: f64, psi0: f64, mean_curvature: f64) -> Result<f64> {
    if !(psi0 > 0.0) {
        return Err(Error::Positivity(psi0));
    }
    let lambda = lambda_kappa(n, 1.0, d)?;
    Ok(psi0 * (1.0 + mean_curvature * mean_curvature).powf((n as f64 - 1.0) / 2.0) * lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::uniform_grid;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6};

    #[test]
    fn round_sphere_against_itself_is_equality() {
        let m = WarpedMetric::round_sphere(2);
        let total = m.total_volume();
        let grid = uniform_grid(64, 0.0, total);
        let report = ball_comparison_check(&m, 1.0, &grid, 1e-9).unwrap();
        assert!(report.global_pass);
        for p in &report.points {
            assert!((p.area - p.model_area).abs() < 1e-9);
        }
    }

    #[test]
    fn flat_ball_against_flat_space_is_equality() {
        let m = WarpedMetric::euclidean_ball(3, 2.0).unwrap();
        let total = m.total_volume();
        let grid = uniform_grid(32, 0.0, total);
        let report = ball_comparison_check(&m, 0.0, &grid, 1e-9).unwrap();
        assert!(report.global_pass);
        for p in &report.points {
            assert!((p.area - p.model_area).abs() < 1e-8 * p.area.max(1.0));
        }
    }

    #[test]
    fn perturbed_sphere_passes_all_ingredients() {
        let m = WarpedMetric::perturbed_sphere(2, 0.05).unwrap();
        let kappa = ricci_lower_bound(&m).unwrap().kappa_star;
        let unit = m.rescaled(kappa).unwrap();
        let grid = uniform_grid(128, 0.0, unit.total_volume());
        let report = ball_comparison_check(&unit, 1.0, &grid, 1e-9).unwrap();
        assert!(report.global_pass, "violations: {:?}", report.violations);
    }

    #[test]
    fn excessive_kappa_is_rejected() {
        let m = WarpedMetric::perturbed_sphere(2, 0.05).unwrap();
        let grid = uniform_grid(8, 0.0, m.total_volume());
        assert!(ball_comparison_check(&m, 1.0, &grid, 1e-9).is_err());
    }

    #[test]
    fn heintze_karcher_caps_give_exactly_one() {
        // For a cap of radius r on the unit two-sphere the integrand is
        // sin(r - t)/sin r and the window integral telescopes to 1.
        for r in [FRAC_PI_6, FRAC_PI_3, FRAC_PI_2, 2.0 * FRAC_PI_3] {
            let psi0 = r.sin() / 2.0;
            let h = r.cos() / r.sin();
            let value = heintze_karcher_bound(2, PI, psi0, h, r).unwrap();
            assert!((value - 1.0).abs() <= 1e-8, "r={r}: {value}");
        }
    }

    #[test]
    fn heintze_karcher_equator_case() {
        let value = heintze_karcher_bound(2, PI, 0.5, 0.0, FRAC_PI_2).unwrap();
        assert!((value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn majorant_dominates_the_integral() {
        for h in [0.0, 0.5, 1.0, 3.0] {
            let value = heintze_karcher_bound(2, PI, 0.3, h, FRAC_PI_2).unwrap();
            let majorant = heintze_karcher_majorant(2, PI, 0.3, h).unwrap();
            assert!(value <= majorant + 1e-12, "H={h}: {value} vs {majorant}");
        }
        // Spot value: H = 1, n = 2, d = pi has majorant psi0 sqrt(2) * 2.
        let majorant = heintze_karcher_majorant(2, PI, 0.3, 1.0).unwrap();
        assert!((majorant - 0.3 * 2.0f64.sqrt() * 2.0).abs() < 1e-10);
    }

    #[test]
    fn empty_positive_part_gives_zero() {
        // A huge mean curvature pulls the positive arc of the integrand
        // entirely below the window.
        let value = heintze_karcher_bound(2, 0.5, 0.5, 1e6, 1.0).unwrap();
        assert_eq!(value, 0.0);
    }
}
