//! Grid verification of the supersolution property.

use crate::error::{Error, Result};
use crate::profile::Profile;

use super::subjet::{subjet_at, SubjetSpec};
use super::{residual_first_order, residual_second_order, DifferentialInequality};

/// Verdict at a single grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// No test parabola touches from below; the inequality is vacuous here.
    Vacuous,
    Violation,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Vacuous => "vacuous",
            Verdict::Violation => "violation",
        }
    }
}

/// The test triple realizing the worst residual at a point.
#[derive(Debug, Clone, Copy)]
pub struct Witness {
    pub slope: f64,
    /// Absent for first-order inequalities, which do not see curvature.
    pub curvature: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct PointVerdict {
    pub beta: f64,
    pub verdict: Verdict,
    /// Worst residual over the admissible test triples (absent when
    /// vacuous).
    pub residual: Option<f64>,
    pub witness: Option<Witness>,
}

/// Per-grid-point verdicts for one inequality.
#[derive(Debug, Clone)]
pub struct SupersolutionReport {
    pub points: Vec<PointVerdict>,
    pub global_pass: bool,
    pub tol: f64,
}

impl SupersolutionReport {
    pub fn violations(&self) -> usize {
        self.points
            .iter()
            .filter(|p| p.verdict == Verdict::Violation)
            .count()
    }

    /// Most negative residual over non-vacuous points.
    pub fn worst_residual(&self) -> Option<f64> {
        self.points
            .iter()
            .filter_map(|p| p.residual)
            .min_by(|a, b| a.total_cmp(b))
    }

    /// Largest absolute residual over non-vacuous points.
    pub fn max_abs_residual(&self) -> Option<f64> {
        self.points
            .iter()
            .filter_map(|p| p.residual.map(f64::abs))
            .max_by(|a, b| a.total_cmp(b))
    }

    /// Concatenate reports from disjoint grid chunks.
    pub fn merge(mut reports: Vec<SupersolutionReport>) -> SupersolutionReport {
        let tol = reports.first().map_or(0.0, |r| r.tol);
        let mut points = Vec::new();
        for r in &mut reports {
            points.append(&mut r.points);
        }
        let global_pass = points.iter().all(|p| p.verdict != Verdict::Violation);
        SupersolutionReport {
            points,
            global_pass,
            tol,
        }
    }
}

/// Tolerance and subjet parameters for [`check_supersolution`].
#[derive(Debug, Clone, Copy)]
pub struct CheckSpec {
    /// Residuals below `-tol` are violations.
    pub tol: f64,
    pub subjet: SubjetSpec,
}

impl CheckSpec {
    /// Default for closed-form profiles, whose derivatives are exact.
    pub fn closed_form() -> Self {
        CheckSpec {
            tol: 1e-8,
            subjet: SubjetSpec::default(),
        }
    }

    /// Default for sampled profiles, an order of magnitude above the
    /// discretization error of the default grids.
    pub fn sampled() -> Self {
        CheckSpec {
            tol: 1e-4,
            subjet: SubjetSpec::default(),
        }
    }

    pub fn for_profile(profile: &Profile) -> Self {
        if profile.is_closed_form() {
            Self::closed_form()
        } else {
            Self::sampled()
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }
}

/// Verify the supersolution inequality at every grid point.
///
/// Closed-form profiles are tested classically on their exact value,
/// slope, and curvature. Sampled profiles are tested against their
/// numerical subjet: for each admissible slope only the largest
/// admissible curvature matters, since the second-order residual is
/// decreasing in the curvature; first-order inequalities ignore the
/// curvature entirely. Violations are report entries, not errors.
pub fn check_supersolution(
    profile: &Profile,
    ineq: &DifferentialInequality,
    grid: &[f64],
    spec: &CheckSpec,
) -> Result<SupersolutionReport> {
    let mut points = Vec::with_capacity(grid.len());
    for &beta in grid {
        let point = if profile.is_closed_form() {
            let e = profile.eval(beta)?;
            if !(e.value > 0.0) {
                return Err(Error::Positivity(e.value));
            }
            let residual = if ineq.is_second_order() {
                residual_second_order(ineq, e.value, e.slope, e.curvature)?
            } else {
                residual_first_order(ineq, e.value, e.slope)?
            };
            let verdict = if residual >= -spec.tol {
                Verdict::Pass
            } else {
                Verdict::Violation
            };
            PointVerdict {
                beta,
                verdict,
                residual: Some(residual),
                witness: Some(Witness {
                    slope: e.slope,
                    curvature: ineq.is_second_order().then_some(e.curvature),
                }),
            }
        } else {
            let index = profile.locate(beta)?;
            let value = profile.sample_values().expect("sampled")[index];
            if !(value > 0.0) {
                return Err(Error::Positivity(value));
            }
            let subjet = subjet_at(profile, index, &spec.subjet)?;
            if subjet.empty {
                PointVerdict {
                    beta,
                    verdict: Verdict::Vacuous,
                    residual: None,
                    witness: None,
                }
            } else {
                let mut worst: Option<(f64, Witness)> = None;
                for &(p, x) in &subjet.samples {
                    let residual = if ineq.is_second_order() {
                        residual_second_order(ineq, value, p, x)?
                    } else {
                        residual_first_order(ineq, value, p)?
                    };
                    if worst.as_ref().is_none_or(|(r, _)| residual < *r) {
                        worst = Some((
                            residual,
                            Witness {
                                slope: p,
                                curvature: ineq.is_second_order().then_some(x),
                            },
                        ));
                    }
                }
                let (residual, witness) = worst.expect("non-empty subjet has samples");
                let verdict = if residual >= -spec.tol {
                    Verdict::Pass
                } else {
                    Verdict::Violation
                };
                PointVerdict {
                    beta,
                    verdict,
                    residual: Some(residual),
                    witness: Some(witness),
                }
            }
        };
        points.push(point);
    }

    let global_pass = points.iter().all(|p| p.verdict != Verdict::Violation);
    Ok(SupersolutionReport {
        points,
        global_pass,
        tol: spec.tol,
    })
}
