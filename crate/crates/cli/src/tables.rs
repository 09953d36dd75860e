//! The `profile` and `constants` tabulation commands.

use anyhow::{bail, Result};
use isoprofile::constants::ComparisonConstants;
use isoprofile::profile::uniform_grid;
use isoprofile::warped::{ball_profile, candidate_profile, mean_curvature_sphere, Witness};
use isoprofile::{Pole, Topology};

use crate::report::{Cell, Payload};
use crate::target::Target;

/// Rows `beta, psi, psi_prime, psi_second` for a profile table.
///
/// Space forms tabulate closed-form derivatives. Warped targets tabulate
/// the candidate profile (caps and bands) in absolute normalization; the
/// slope comes from the cap mean curvature when a cap wins and the second
/// derivative is omitted.
pub fn profile_table(
    target: &Target,
    absolute: bool,
    grid_points: usize,
    beta_max: Option<f64>,
) -> Result<Payload> {
    let header = vec!["beta", "psi", "psi_prime", "psi_second"];
    let mut rows = Vec::with_capacity(grid_points);
    match target {
        Target::SpaceForm(sf) => {
            if absolute {
                let hi = match beta_max {
                    Some(hi) => hi,
                    None => {
                        if sf.curvature() > 0.0 {
                            sf.total_volume()?
                        } else {
                            10.0
                        }
                    }
                };
                for v in uniform_grid(grid_points, 0.0, hi) {
                    let e = sf.profile_h2(v)?;
                    rows.push(vec![
                        Cell::Num(v),
                        Cell::Num(e.value),
                        Cell::Num(e.slope),
                        Cell::Num(e.curvature),
                    ]);
                }
            } else {
                if sf.curvature() <= 0.0 {
                    bail!(
                        "the normalized profile needs kappa > 0 (infinite total volume); \
                         use --h2 for the absolute profile"
                    );
                }
                for beta in uniform_grid(grid_points, 0.0, 1.0) {
                    let e = sf.profile_h1(beta)?;
                    rows.push(vec![
                        Cell::Num(beta),
                        Cell::Num(e.value),
                        Cell::Num(e.slope),
                        Cell::Num(e.curvature),
                    ]);
                }
            }
        }
        Target::Warp(m) => {
            let total = m.total_volume();
            let hi = beta_max.unwrap_or(total).min(total);
            let nm1 = (m.dimension() - 1) as f64;
            for v in uniform_grid(grid_points, 0.0, hi) {
                let (value, slope) = match m.topology() {
                    Topology::ClosedSphere => {
                        let c = candidate_profile(m, v)?;
                        let slope = match c.witness {
                            Witness::CapAtZero => {
                                let r = m.radius_for_volume(Pole::Zero, v)?;
                                Some(nm1 * mean_curvature_sphere(m, r)?)
                            }
                            Witness::CapAtEnd => {
                                let rho = m.radius_for_volume(Pole::End, v)?;
                                Some(-nm1 * mean_curvature_sphere(m, m.length() - rho)?)
                            }
                            Witness::Band { .. } => None,
                        };
                        (c.value, slope)
                    }
                    Topology::Ball => {
                        let r = m.radius_for_volume(Pole::Zero, v)?;
                        (
                            ball_profile(m, Pole::Zero, v)?,
                            Some(nm1 * mean_curvature_sphere(m, r)?),
                        )
                    }
                };
                rows.push(vec![
                    Cell::Num(v),
                    Cell::Num(value),
                    slope.map_or(Cell::Missing, Cell::Num),
                    Cell::Missing,
                ]);
            }
        }
    }
    Ok(Payload::Table { header, rows })
}

/// Rows of comparison constants over the (n, d) selections.
pub fn constants_table(ns: &[u32], ds: &[f64], kappa: f64) -> Result<Payload> {
    let header = vec!["n", "kappa", "d", "gamma_n", "lambda", "alpha"];
    let mut rows = Vec::new();
    for &n in ns {
        for &d in ds {
            let c = ComparisonConstants::evaluate(n, kappa, d)?;
            rows.push(vec![
                Cell::Text(n.to_string()),
                Cell::Num(c.kappa),
                Cell::Num(c.d),
                Cell::Num(c.gamma_n),
                Cell::Num(c.lambda),
                c.alpha.map_or(Cell::Missing, Cell::Num),
            ]);
        }
    }
    Ok(Payload::Table { header, rows })
}
