//! Pointwise comparison principles between a profile and a space-form
//! reference: the Levy-Gromov lower bound, the Berard-Besson-Gallot
//! improvement, the two-sided envelope, and monotonicity of the profile
//! ratio.

use crate::error::{Error, Result};
use crate::profile::{Normalization, Profile};
use crate::spaceform::unit_sphere_area;

/// Which comparison to run. "Pass" always means slack >= -tol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ComparisonMode {
    /// h >= ref pointwise.
    LevyGromov,
    /// h >= alpha * ref pointwise, alpha from the constants module.
    BerardBessonGallot { alpha: f64 },
    /// ref(beta) <= h(beta) <= (|S^n|/|M|) ref(|M| beta / |S^n|) for
    /// normalized profiles of a manifold of total volume |M|.
    TwoSided { total_volume: f64 },
    /// Successive differences of h/ref are non-positive.
    RatioMonotone,
}

impl ComparisonMode {
    pub fn label(&self) -> &'static str {
        match self {
            ComparisonMode::LevyGromov => "levy-gromov",
            ComparisonMode::BerardBessonGallot { .. } => "bbg",
            ComparisonMode::TwoSided { .. } => "two-sided",
            ComparisonMode::RatioMonotone => "ratio-monotone",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ComparisonPoint {
    pub beta: f64,
    /// h at beta (for the ratio mode, the ratio at beta).
    pub value: f64,
    /// The comparison value (reference, scaled reference, or previous
    /// ratio).
    pub reference: f64,
    /// Signed slack; the point passes iff slack >= -tol.
    pub slack: f64,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub mode: ComparisonMode,
    pub points: Vec<ComparisonPoint>,
    pub worst_slack: f64,
    pub global_pass: bool,
    pub tol: f64,
}

/// Run `mode` for profile `h` against `reference` on a shared grid.
///
/// Sampled profiles must carry the grid points as samples; closed-form
/// profiles are evaluated directly. The two-sided upper bound evaluates
/// the reference at rescaled arguments and therefore needs a closed-form
/// reference.
pub fn comparison_check(
    h: &Profile,
    reference: &Profile,
    mode: &ComparisonMode,
    grid: &[f64],
    tol: f64,
) -> Result<ComparisonReport> {
    if grid.len() < 2 {
        return Err(Error::domain("comparison grid needs at least 2 points"));
    }
    if !(tol >= 0.0) {
        return Err(Error::domain("comparison tolerance must be non-negative"));
    }

    let h_values: Vec<f64> = grid.iter().map(|&b| h.value(b)).collect::<Result<_>>()?;
    let ref_values: Vec<f64> = grid
        .iter()
        .map(|&b| reference.value(b))
        .collect::<Result<_>>()?;

    let mut points = Vec::with_capacity(grid.len());
    match *mode {
        ComparisonMode::LevyGromov => {
            for ((&beta, &hv), &rv) in grid.iter().zip(&h_values).zip(&ref_values) {
                let slack = hv - rv;
                points.push(ComparisonPoint {
                    beta,
                    value: hv,
                    reference: rv,
                    slack,
                    pass: slack >= -tol,
                });
            }
        }
        ComparisonMode::BerardBessonGallot { alpha } => {
            if !(alpha >= 1.0) {
                return Err(Error::domain(format!(
                    "the improvement factor must be at least 1, got {alpha}"
                )));
            }
            for ((&beta, &hv), &rv) in grid.iter().zip(&h_values).zip(&ref_values) {
                let slack = hv - alpha * rv;
                points.push(ComparisonPoint {
                    beta,
                    value: hv,
                    reference: alpha * rv,
                    slack,
                    pass: slack >= -tol,
                });
            }
        }
        ComparisonMode::TwoSided { total_volume } => {
            if h.normalization() != Normalization::Fraction {
                return Err(Error::domain(
                    "the two-sided comparison applies to normalized profiles",
                ));
            }
            if !reference.is_closed_form() {
                return Err(Error::Alignment(
                    "the two-sided upper bound needs a closed-form reference".into(),
                ));
            }
            let sphere_volume = unit_sphere_area(h.dimension() + 1);
            let ratio = sphere_volume / total_volume;
            for ((&beta, &hv), &rv) in grid.iter().zip(&h_values).zip(&ref_values) {
                let upper = ratio * reference.value(beta / ratio)?;
                let slack = (hv - rv).min(upper - hv);
                points.push(ComparisonPoint {
                    beta,
                    value: hv,
                    reference: rv,
                    slack,
                    pass: slack >= -tol,
                });
            }
        }
        ComparisonMode::RatioMonotone => {
            let mut prev: Option<f64> = None;
            for ((&beta, &hv), &rv) in grid.iter().zip(&h_values).zip(&ref_values) {
                if !(rv > 0.0) {
                    return Err(Error::Positivity(rv));
                }
                let ratio = hv / rv;
                let (slack, reference) = match prev {
                    Some(p) => (p - ratio, p),
                    None => (0.0, ratio),
                };
                points.push(ComparisonPoint {
                    beta,
                    value: ratio,
                    reference,
                    slack,
                    pass: slack >= -tol,
                });
                prev = Some(ratio);
            }
        }
    }

    let worst_slack = points
        .iter()
        .map(|p| p.slack)
        .min_by(|a, b| a.total_cmp(b))
        .expect("non-empty grid");
    let global_pass = points.iter().all(|p| p.pass);
    Ok(ComparisonReport {
        mode: *mode,
        points,
        worst_slack,
        global_pass,
        tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::cosine_grid;
    use crate::spaceform::SpaceForm;

    #[test]
    fn self_comparison_passes_at_equality() {
        let sf = SpaceForm::new(2, 1.0).unwrap();
        let p = sf.h1_profile().unwrap();
        let grid = cosine_grid(64);
        let report = comparison_check(&p, &p, &ComparisonMode::LevyGromov, &grid, 1e-12).unwrap();
        assert!(report.global_pass);
        assert_eq!(report.worst_slack, 0.0);
    }

    #[test]
    fn bbg_with_unit_alpha_is_levy_gromov() {
        let sf = SpaceForm::new(3, 1.0).unwrap();
        let p = sf.h1_profile().unwrap();
        let grid = cosine_grid(32);
        let report = comparison_check(
            &p,
            &p,
            &ComparisonMode::BerardBessonGallot { alpha: 1.0 },
            &grid,
            1e-12,
        )
        .unwrap();
        assert!(report.global_pass);
        assert!(report.worst_slack.abs() < 1e-15);
    }

    #[test]
    fn two_sided_self_comparison() {
        let sf = SpaceForm::new(2, 1.0).unwrap();
        let p = sf.h1_profile().unwrap();
        let total = sf.total_volume().unwrap();
        let grid = cosine_grid(32);
        let report = comparison_check(
            &p,
            &p,
            &ComparisonMode::TwoSided {
                total_volume: total,
            },
            &grid,
            1e-9,
        )
        .unwrap();
        assert!(report.global_pass, "worst slack {}", report.worst_slack);
    }

    #[test]
    fn ratio_of_profile_with_itself_is_constant() {
        let sf = SpaceForm::new(2, 1.0).unwrap();
        let p = sf.h2_profile().unwrap();
        let total = sf.total_volume().unwrap();
        let grid: Vec<f64> = cosine_grid(64).iter().map(|b| b * total).collect();
        let report =
            comparison_check(&p, &p, &ComparisonMode::RatioMonotone, &grid, 1e-10).unwrap();
        assert!(report.global_pass);
        assert!(report.worst_slack.abs() < 1e-12);
    }

    #[test]
    fn planted_dip_is_reported() {
        let sf = SpaceForm::new(2, 1.0).unwrap();
        let reference = sf.h1_profile().unwrap();
        let grid = cosine_grid(64);
        let tol = 1e-6;
        let mut values: Vec<f64> = grid.iter().map(|&b| reference.value(b).unwrap()).collect();
        values[30] -= 2.0 * tol;
        let dipped = Profile::sampled(2, Normalization::Fraction, grid.clone(), values).unwrap();
        let report =
            comparison_check(&dipped, &reference, &ComparisonMode::LevyGromov, &grid, tol).unwrap();
        assert!(!report.global_pass);
        assert_eq!(report.points.iter().filter(|p| !p.pass).count(), 1);
        assert!(!report.points[30].pass);
    }
}
