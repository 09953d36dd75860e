//! The `verify` suites: each one builds a target profile, runs the
//! matching checker from the core crate, and flattens the result into
//! verdict rows.

use std::f64::consts::PI;

use anyhow::{bail, Result};
use clap::ValueEnum;
use rayon::prelude::*;

use isoprofile::constants::alpha;
use isoprofile::profile::{cosine_grid, cosine_grid_on, uniform_grid};
use isoprofile::spaceform::{ck, sk, SpaceForm};
use isoprofile::viscosity::{
    check_supersolution, comparison_check, CheckSpec, ComparisonMode, ComparisonReport,
    DifferentialInequality, SupersolutionReport, Verdict,
};
use isoprofile::warped::{
    ball_comparison_check, candidate_h2_profile, heintze_karcher_bound, ricci_lower_bound,
    BallComparisonReport,
};
use isoprofile::{Normalization, Pole, Profile, Topology, WarpedMetric};

use crate::report::{fmt_e, VerdictRow};
use crate::target::Target;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    #[value(name = "levy-gromov")]
    LevyGromov,
    #[value(name = "bbg")]
    Bbg,
    #[value(name = "morgan-johnson")]
    MorganJohnson,
    #[value(name = "two-sided")]
    TwoSided,
    #[value(name = "ratio-monotone")]
    RatioMonotone,
    #[value(name = "supersolution-2nd")]
    Supersolution2nd,
    #[value(name = "supersolution-1st")]
    Supersolution1st,
    #[value(name = "heintze-karcher")]
    HeintzeKarcher,
}

pub struct VerifyParams<'a> {
    pub suite: Suite,
    pub target: &'a Target,
    pub d: Option<f64>,
    pub grid: usize,
    pub tol: Option<f64>,
    pub assume_minimizer: bool,
    pub beta_max: Option<f64>,
    pub threads: usize,
}

pub struct SuiteOutcome {
    pub verdicts: Vec<VerdictRow>,
    pub tolerances: Vec<(String, f64)>,
    pub global_pass: bool,
    /// Resolved quantities echoed into the report config.
    pub resolved: Vec<(String, String)>,
}

fn require_flag(params: &VerifyParams) -> Result<()> {
    if !params.assume_minimizer {
        bail!(
            "this suite substitutes the cap/band candidate profile for the true \
             isoperimetric profile on warped targets; pass --assume-minimizer to accept that"
        );
    }
    Ok(())
}

fn certified_bound(m: &WarpedMetric) -> Result<f64> {
    Ok(ricci_lower_bound(m)?.kappa_star)
}

/// Candidate profile of a closed warp in fraction normalization on a
/// cosine grid.
fn candidate_fraction_profile(m: &WarpedMetric, grid_points: usize) -> Result<(Profile, Vec<f64>)> {
    if m.topology() != Topology::ClosedSphere {
        bail!("candidate profiles need a closed-sphere warp");
    }
    let total = m.total_volume();
    let fractions = cosine_grid(grid_points);
    let volumes: Vec<f64> = fractions.iter().map(|b| b * total).collect();
    let (absolute, _) = candidate_h2_profile(m, &volumes)?;
    let values: Vec<f64> = absolute
        .sample_values()
        .expect("sampled candidate")
        .iter()
        .map(|a| a / total)
        .collect();
    let profile = Profile::sampled(
        m.dimension(),
        Normalization::Fraction,
        fractions.clone(),
        values,
    )?;
    Ok((profile, fractions))
}

/// Run the supersolution checker, chunked over a thread pool when
/// `threads > 1`; the merged report is identical to the serial one.
fn run_checker(
    profile: &Profile,
    ineq: &DifferentialInequality,
    grid: &[f64],
    spec: &CheckSpec,
    threads: usize,
) -> Result<SupersolutionReport> {
    if threads <= 1 {
        return Ok(check_supersolution(profile, ineq, grid, spec)?);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()?;
    let chunks: Vec<&[f64]> = grid
        .chunks(32.max(grid.len() / (threads * 4).max(1)))
        .collect();
    let reports = pool.install(|| {
        chunks
            .par_iter()
            .map(|chunk| check_supersolution(profile, ineq, chunk, spec))
            .collect::<std::result::Result<Vec<_>, _>>()
    })?;
    Ok(SupersolutionReport::merge(reports))
}

fn supersolution_rows(report: &SupersolutionReport) -> Vec<VerdictRow> {
    report
        .points
        .iter()
        .map(|p| VerdictRow {
            beta: p.beta,
            verdict: match p.verdict {
                Verdict::Pass => "pass",
                Verdict::Vacuous => "vacuous",
                Verdict::Violation => "violation",
            },
            residual: p.residual,
            witness: p.witness.map(|w| match w.curvature {
                Some(x) => format!("slope={};curvature={}", fmt_e(w.slope), fmt_e(x)),
                None => format!("slope={}", fmt_e(w.slope)),
            }),
        })
        .collect()
}

fn comparison_rows(report: &ComparisonReport) -> Vec<VerdictRow> {
    report
        .points
        .iter()
        .map(|p| VerdictRow {
            beta: p.beta,
            verdict: if p.pass { "pass" } else { "violation" },
            residual: Some(p.slack),
            witness: Some(format!(
                "value={};reference={}",
                fmt_e(p.value),
                fmt_e(p.reference)
            )),
        })
        .collect()
}

fn ball_comparison_rows(report: &BallComparisonReport) -> Vec<VerdictRow> {
    let mut rows = Vec::with_capacity(report.points.len());
    let mut prev_difference: Option<f64> = None;
    for p in &report.points {
        let mut slack = (p.model_area - p.area).min(p.model_volume - p.beta);
        let difference = p.area - p.model_area;
        if let Some(prev) = prev_difference {
            slack = slack.min(prev - difference);
        }
        prev_difference = Some(difference);
        if let (Some(h), Some(h_model)) = (p.mean_curvature, p.model_mean_curvature) {
            slack = slack.min(h_model - h);
        }
        rows.push(VerdictRow {
            beta: p.beta,
            verdict: if slack >= -report.tol {
                "pass"
            } else {
                "violation"
            },
            residual: Some(slack),
            witness: Some(format!(
                "area={};model_area={}",
                fmt_e(p.area),
                fmt_e(p.model_area)
            )),
        });
    }
    rows
}

pub fn run(params: &VerifyParams) -> Result<SuiteOutcome> {
    match params.suite {
        Suite::Supersolution2nd => supersolution_second_order(params),
        Suite::Supersolution1st => supersolution_first_order(params),
        Suite::LevyGromov => levy_gromov(params),
        Suite::Bbg => bbg(params),
        Suite::MorganJohnson => morgan_johnson(params),
        Suite::TwoSided => two_sided(params),
        Suite::RatioMonotone => ratio_monotone(params),
        Suite::HeintzeKarcher => heintze_karcher(params),
    }
}

fn supersolution_second_order(params: &VerifyParams) -> Result<SuiteOutcome> {
    match params.target {
        Target::SpaceForm(sf) => {
            let ineq = DifferentialInequality::second_order(sf.dimension(), sf.curvature())?;
            let (profile, grid) = if sf.curvature() > 0.0 {
                (sf.h1_profile()?, cosine_grid(params.grid))
            } else {
                let hi = params.beta_max.unwrap_or(10.0);
                (sf.h2_profile()?, cosine_grid_on(params.grid, 0.0, hi))
            };
            let spec = CheckSpec::closed_form().with_tol(params.tol.unwrap_or(1e-8));
            let report = run_checker(&profile, &ineq, &grid, &spec, params.threads)?;
            Ok(SuiteOutcome {
                verdicts: supersolution_rows(&report),
                tolerances: vec![("residual".into(), spec.tol)],
                global_pass: report.global_pass,
                resolved: vec![("kappa".into(), fmt_e(sf.curvature()))],
            })
        }
        Target::Warp(m) => {
            require_flag(params)?;
            let kappa = certified_bound(m)?;
            let ineq = DifferentialInequality::second_order(m.dimension(), kappa)?;
            let total = m.total_volume();
            let grid = cosine_grid_on(params.grid, 0.0, total);
            let (profile, _) = candidate_h2_profile(m, &grid)?;
            let spec = CheckSpec::sampled().with_tol(params.tol.unwrap_or(1e-4));
            let window = spec.subjet.window;
            let interior = &grid[window..grid.len() - window];
            let report = run_checker(&profile, &ineq, interior, &spec, params.threads)?;
            Ok(SuiteOutcome {
                verdicts: supersolution_rows(&report),
                tolerances: vec![("residual".into(), spec.tol)],
                global_pass: report.global_pass,
                resolved: vec![("kappa_star".into(), fmt_e(kappa))],
            })
        }
    }
}

fn supersolution_first_order(params: &VerifyParams) -> Result<SuiteOutcome> {
    match params.target {
        Target::SpaceForm(sf) => {
            if sf.curvature() <= 0.0 {
                bail!(
                    "the first-order suite needs the normalized profile, undefined on \
                     infinite-volume space forms (kappa <= 0)"
                );
            }
            let d = params.d.unwrap_or(PI / sf.curvature().sqrt());
            let ineq =
                DifferentialInequality::first_order_positive(sf.dimension(), sf.curvature(), d)?;
            let profile = sf.h1_profile()?;
            let grid = cosine_grid(params.grid);
            let spec = CheckSpec::closed_form().with_tol(params.tol.unwrap_or(1e-8));
            let report = run_checker(&profile, &ineq, &grid, &spec, params.threads)?;
            Ok(SuiteOutcome {
                verdicts: supersolution_rows(&report),
                tolerances: vec![("residual".into(), spec.tol)],
                global_pass: report.global_pass,
                resolved: vec![("d".into(), fmt_e(d))],
            })
        }
        Target::Warp(m) => {
            require_flag(params)?;
            let kappa = certified_bound(m)?;
            if kappa <= 0.0 {
                bail!("the first-order suite needs a positive certified Ricci bound");
            }
            let d = params.d.unwrap_or(m.length());
            let ineq = DifferentialInequality::first_order_positive(m.dimension(), kappa, d)?;
            let (profile, fractions) = candidate_fraction_profile(m, params.grid)?;
            let spec = CheckSpec::sampled().with_tol(params.tol.unwrap_or(1e-4));
            let window = spec.subjet.window;
            let interior = &fractions[window..fractions.len() - window];
            let report = run_checker(&profile, &ineq, interior, &spec, params.threads)?;
            Ok(SuiteOutcome {
                verdicts: supersolution_rows(&report),
                tolerances: vec![("residual".into(), spec.tol)],
                global_pass: report.global_pass,
                resolved: vec![("kappa_star".into(), fmt_e(kappa)), ("d".into(), fmt_e(d))],
            })
        }
    }
}

fn levy_gromov(params: &VerifyParams) -> Result<SuiteOutcome> {
    let tol = params.tol.unwrap_or(1e-6);
    let (h, reference, grid, resolved) = match params.target {
        Target::SpaceForm(sf) => {
            if sf.curvature() <= 0.0 {
                bail!("the Levy-Gromov comparison needs kappa > 0");
            }
            let profile = sf.h1_profile()?;
            (
                profile.clone(),
                profile,
                cosine_grid(params.grid),
                vec![("kappa".into(), fmt_e(sf.curvature()))],
            )
        }
        Target::Warp(m) => {
            require_flag(params)?;
            let kappa = certified_bound(m)?;
            if kappa <= 0.0 {
                bail!("the Levy-Gromov comparison needs a positive certified Ricci bound");
            }
            let (h, fractions) = candidate_fraction_profile(m, params.grid)?;
            let reference = SpaceForm::new(m.dimension(), kappa)?.h1_profile()?;
            (
                h,
                reference,
                fractions,
                vec![("kappa_star".into(), fmt_e(kappa))],
            )
        }
    };
    let report = comparison_check(&h, &reference, &ComparisonMode::LevyGromov, &grid, tol)?;
    Ok(SuiteOutcome {
        verdicts: comparison_rows(&report),
        tolerances: vec![("slack".into(), tol)],
        global_pass: report.global_pass,
        resolved,
    })
}

fn bbg(params: &VerifyParams) -> Result<SuiteOutcome> {
    let tol = params.tol.unwrap_or(1e-6);
    let (h, grid, d, mut resolved) = match params.target {
        Target::SpaceForm(sf) => {
            if (sf.curvature() - 1.0).abs() > 1e-12 {
                bail!("the BBG comparison is normalized to kappa = 1");
            }
            (
                sf.h1_profile()?,
                cosine_grid(params.grid),
                params.d.unwrap_or(PI),
                Vec::new(),
            )
        }
        Target::Warp(m) => {
            require_flag(params)?;
            let kappa = certified_bound(m)?;
            if kappa <= 0.0 {
                bail!("the BBG comparison needs a positive certified Ricci bound");
            }
            let unit = m.rescaled(kappa)?;
            let (h, fractions) = candidate_fraction_profile(&unit, params.grid)?;
            // The radial extent bounds the diameter of the test family;
            // alpha is decreasing in d, so this is the conservative side.
            let d = params.d.unwrap_or(unit.length());
            (h, fractions, d, vec![("kappa_star".into(), fmt_e(kappa))])
        }
    };
    let n = h.dimension();
    let a = alpha(n, d)?;
    resolved.push(("d".into(), fmt_e(d)));
    resolved.push(("alpha".into(), fmt_e(a)));
    let reference = SpaceForm::new(n, 1.0)?.h1_profile()?;
    let report = comparison_check(
        &h,
        &reference,
        &ComparisonMode::BerardBessonGallot { alpha: a },
        &grid,
        tol,
    )?;
    Ok(SuiteOutcome {
        verdicts: comparison_rows(&report),
        tolerances: vec![("slack".into(), tol)],
        global_pass: report.global_pass,
        resolved,
    })
}

fn morgan_johnson(params: &VerifyParams) -> Result<SuiteOutcome> {
    let tol = params.tol.unwrap_or(1e-9);
    let (metric, kappa) = match params.target {
        Target::SpaceForm(sf) => {
            let length = if sf.curvature() > 0.0 { 0.0 } else { 2.0 };
            (
                WarpedMetric::space_form(sf.dimension(), sf.curvature(), length)?,
                sf.curvature(),
            )
        }
        Target::Warp(m) => {
            let kappa = certified_bound(m)?;
            ((**m).clone(), kappa)
        }
    };
    let grid = uniform_grid(params.grid, 0.0, metric.total_volume());
    let report = ball_comparison_check(&metric, kappa, &grid, tol)?;
    Ok(SuiteOutcome {
        verdicts: ball_comparison_rows(&report),
        tolerances: vec![("slack".into(), tol)],
        global_pass: report.global_pass,
        resolved: vec![("kappa".into(), fmt_e(kappa))],
    })
}

fn two_sided(params: &VerifyParams) -> Result<SuiteOutcome> {
    let tol = params.tol.unwrap_or(1e-6);
    let (h, grid, total, resolved) = match params.target {
        Target::SpaceForm(sf) => {
            if (sf.curvature() - 1.0).abs() > 1e-12 {
                bail!("the two-sided comparison is normalized to kappa = 1");
            }
            (
                sf.h1_profile()?,
                cosine_grid(params.grid),
                sf.total_volume()?,
                Vec::new(),
            )
        }
        Target::Warp(m) => {
            require_flag(params)?;
            let kappa = certified_bound(m)?;
            if kappa <= 0.0 {
                bail!("the two-sided comparison needs a positive certified Ricci bound");
            }
            let unit = m.rescaled(kappa)?;
            let total = unit.total_volume();
            let (h, fractions) = candidate_fraction_profile(&unit, params.grid)?;
            (
                h,
                fractions,
                total,
                vec![("kappa_star".into(), fmt_e(kappa))],
            )
        }
    };
    let reference = SpaceForm::new(h.dimension(), 1.0)?.h1_profile()?;
    let report = comparison_check(
        &h,
        &reference,
        &ComparisonMode::TwoSided {
            total_volume: total,
        },
        &grid,
        tol,
    )?;
    Ok(SuiteOutcome {
        verdicts: comparison_rows(&report),
        tolerances: vec![("slack".into(), tol)],
        global_pass: report.global_pass,
        resolved,
    })
}

fn ratio_monotone(params: &VerifyParams) -> Result<SuiteOutcome> {
    let tol = params.tol.unwrap_or(1e-6);
    let (h, grid, resolved) = match params.target {
        Target::SpaceForm(sf) => {
            if sf.curvature() < 1.0 - 1e-12 {
                bail!("ratio monotonicity against the unit sphere needs kappa >= 1");
            }
            let total = sf.total_volume()?;
            (
                sf.h2_profile()?,
                uniform_grid(params.grid, 0.0, total),
                Vec::new(),
            )
        }
        Target::Warp(m) => {
            require_flag(params)?;
            let kappa = certified_bound(m)?;
            if kappa <= 0.0 {
                bail!("ratio monotonicity needs a positive certified Ricci bound");
            }
            let unit = m.rescaled(kappa)?;
            let grid = uniform_grid(params.grid, 0.0, unit.total_volume());
            let (h, _) = candidate_h2_profile(&unit, &grid)?;
            (h, grid, vec![("kappa_star".into(), fmt_e(kappa))])
        }
    };
    let reference = SpaceForm::new(h.dimension(), 1.0)?.h2_profile()?;
    let report = comparison_check(&h, &reference, &ComparisonMode::RatioMonotone, &grid, tol)?;
    Ok(SuiteOutcome {
        verdicts: comparison_rows(&report),
        tolerances: vec![("slack".into(), tol)],
        global_pass: report.global_pass,
        resolved,
    })
}

fn heintze_karcher(params: &VerifyParams) -> Result<SuiteOutcome> {
    match params.target {
        Target::SpaceForm(sf) => {
            if (sf.curvature() - 1.0).abs() > 1e-12 {
                bail!("the Heintze-Karcher check is normalized to kappa = 1");
            }
            let tol = params.tol.unwrap_or(1e-8);
            let d = params.d.unwrap_or(PI);
            let n = sf.dimension();
            let total = sf.total_volume()?;
            let mut verdicts = Vec::with_capacity(params.grid);
            let mut global_pass = true;
            // Caps of the round sphere make the bound an identity.
            for r in uniform_grid(params.grid, 0.0, PI) {
                let psi0 = sf.ball_area(r)? / total;
                let h = ck(1.0, r) / sk(1.0, r);
                let value = heintze_karcher_bound(n, d, psi0, h, r)?;
                let pass = (value - 1.0).abs() <= tol;
                global_pass &= pass;
                verdicts.push(VerdictRow {
                    beta: r,
                    verdict: if pass { "pass" } else { "violation" },
                    residual: Some(value - 1.0),
                    witness: Some(format!("value={}", fmt_e(value))),
                });
            }
            Ok(SuiteOutcome {
                verdicts,
                tolerances: vec![("identity".into(), tol)],
                global_pass,
                resolved: vec![("d".into(), fmt_e(d))],
            })
        }
        Target::Warp(m) => {
            // Caps are honest regions, so the lower bound needs no
            // minimizer assumption; the metric is rescaled to a unit
            // Ricci bound first.
            let tol = params.tol.unwrap_or(1e-6);
            let kappa = certified_bound(m)?;
            if kappa <= 0.0 {
                bail!("the Heintze-Karcher check needs a positive certified Ricci bound");
            }
            let unit = m.rescaled(kappa)?;
            let d = params.d.unwrap_or(unit.length());
            if d > PI * (1.0 + 1e-12) {
                bail!("the rescaled diameter {d} exceeds the Bonnet-Myers range pi");
            }
            let n = unit.dimension();
            let total = unit.total_volume();
            let mut verdicts = Vec::with_capacity(params.grid);
            let mut global_pass = true;
            for beta in uniform_grid(params.grid, 0.0, total) {
                let r = unit.radius_for_volume(Pole::Zero, beta)?;
                let psi0 = unit.sphere_area_at(r) / total;
                let h = unit.warp_d1(r) / unit.warp(r);
                let value = heintze_karcher_bound(n, d, psi0, h, r)?;
                let pass = value >= 1.0 - tol;
                global_pass &= pass;
                verdicts.push(VerdictRow {
                    beta,
                    verdict: if pass { "pass" } else { "violation" },
                    residual: Some(value - 1.0),
                    witness: Some(format!("value={};radius={}", fmt_e(value), fmt_e(r))),
                });
            }
            Ok(SuiteOutcome {
                verdicts,
                tolerances: vec![("consistency".into(), tol)],
                global_pass,
                resolved: vec![("kappa_star".into(), fmt_e(kappa)), ("d".into(), fmt_e(d))],
            })
        }
    }
}
