//! Geodesic-ball profiles and rotationally invariant candidate profiles.

use crate::error::{Error, Result};
use crate::numerics::minimize_1d;
use crate::profile::{Normalization, Profile};

use super::{Pole, Topology, WarpedMetric};

/// Boundary area of the geodesic ball about `pole` enclosing volume
/// `beta`: omega_{n-1} f(r)^(n-1) at the radius where the ball volume
/// reaches `beta`.
pub fn ball_profile(m: &WarpedMetric, pole: Pole, beta: f64) -> Result<f64> {
    let total = m.total_volume();
    if !(beta > 0.0 && beta < total) {
        return Err(Error::domain(format!(
            "enclosed volume must lie in (0, {total}), got {beta}"
        )));
    }
    let rho = m.radius_for_volume(pole, beta)?;
    let coordinate = match pole {
        Pole::Zero => rho,
        Pole::End => m.length() - rho,
    };
    Ok(m.sphere_area_at(coordinate))
}

/// Mean curvature of the distance sphere at coordinate `r` with respect
/// to the outward normal of the ball about the near pole: H = f'/f.
/// The first variation of area fixes this normalization,
/// d(area)/d(volume) = (n-1) H.
pub fn mean_curvature_sphere(m: &WarpedMetric, r: f64) -> Result<f64> {
    if !(r > 0.0 && r < m.length()) {
        return Err(Error::SingularRadius(r));
    }
    Ok(m.warp_d1(r) / m.warp(r))
}

/// Which rotationally invariant region realized the candidate value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Witness {
    CapAtZero,
    CapAtEnd,
    Band { inner: f64, outer: f64 },
}

impl Witness {
    pub fn label(&self) -> String {
        match self {
            Witness::CapAtZero => "cap@0".into(),
            Witness::CapAtEnd => "cap@L".into(),
            Witness::Band { inner, outer } => format!("band({inner:.6},{outer:.6})"),
        }
    }
}

/// A candidate isoperimetric value together with its witness region.
#[derive(Debug, Clone, Copy)]
pub struct Candidate {
    pub value: f64,
    pub witness: Witness,
}

/// Least boundary area over the rotationally invariant candidate family
/// at enclosed volume `beta`: caps about either pole and bands
/// {r1 < r < r2} of the same volume, minimized over the inner radius.
///
/// This is an upper bound for the isoperimetric profile (caps and bands
/// are admissible regions); it is the profile itself only when some cap
/// or band is a true minimizer.
pub fn candidate_profile(m: &WarpedMetric, beta: f64) -> Result<Candidate> {
    if m.topology() != Topology::ClosedSphere {
        return Err(Error::domain(
            "candidate profiles are defined on closed-sphere warped metrics",
        ));
    }
    let total = m.total_volume();
    if !(beta > 0.0 && beta < total) {
        return Err(Error::domain(format!(
            "enclosed volume must lie in (0, {total}), got {beta}"
        )));
    }

    let cap_zero = ball_profile(m, Pole::Zero, beta)?;
    let cap_end = ball_profile(m, Pole::End, beta)?;
    let mut best = Candidate {
        value: cap_zero,
        witness: Witness::CapAtZero,
    };
    if cap_end < best.value {
        best = Candidate {
            value: cap_end,
            witness: Witness::CapAtEnd,
        };
    }

    // Bands: the inner radius ranges up to the radius whose ball already
    // holds the complementary volume. The band area functional need not
    // be unimodal for wiggly warps, so the search runs from 8 equispaced
    // sub-brackets and keeps the best local result.
    let r1_max = m.radius_for_volume(Pole::Zero, total - beta)?;
    let outer_for = |r1: f64| -> Result<f64> {
        let target = (m.volume_from(Pole::Zero, r1)? + beta).min(total);
        m.radius_for_volume(Pole::Zero, target)
    };
    let band_area = |r1: f64| -> Result<f64> {
        let r2 = outer_for(r1)?;
        Ok(m.sphere_area_at(r1) + m.sphere_area_at(r2))
    };
    let lo = r1_max * 1e-9;
    let hi = r1_max * (1.0 - 1e-9);
    let seeds = 8;
    for k in 0..seeds {
        let a = lo + (hi - lo) * k as f64 / seeds as f64;
        let b = lo + (hi - lo) * (k + 1) as f64 / seeds as f64;
        let (r1, area) = minimize_1d(
            |r| band_area(r).unwrap_or(f64::INFINITY),
            a,
            b,
            1e-7 * m.length(),
        )?;
        if area < best.value {
            best = Candidate {
                value: area,
                witness: Witness::Band {
                    inner: r1,
                    outer: outer_for(r1)?,
                },
            };
        }
    }

    Ok(best)
}

/// Candidate values on a volume grid, packaged as a sampled
/// absolute-normalization [`Profile`] with the per-point witnesses.
pub fn candidate_h2_profile(m: &WarpedMetric, grid: &[f64]) -> Result<(Profile, Vec<Witness>)> {
    let mut values = Vec::with_capacity(grid.len());
    let mut witnesses = Vec::with_capacity(grid.len());
    for &beta in grid {
        let c = candidate_profile(m, beta)?;
        values.push(c.value);
        witnesses.push(c.witness);
    }
    let profile = Profile::sampled(
        m.dimension(),
        Normalization::Absolute,
        grid.to_vec(),
        values,
    )?;
    Ok((profile, witnesses))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::uniform_grid;
    use crate::spaceform::{asymptotic_constant, SpaceForm};
    use std::f64::consts::{FRAC_PI_3, PI};

    #[test]
    fn hemisphere_boundary_is_the_equator() {
        let m = WarpedMetric::round_sphere(2);
        let area = ball_profile(&m, Pole::Zero, 2.0 * PI).unwrap();
        assert!((area - 2.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn cap_boundary_at_third_of_pi() {
        // |B(pi/3)| = 2 pi (1 - cos(pi/3)) = pi, boundary 2 pi sin(pi/3).
        let m = WarpedMetric::round_sphere(2);
        let area = ball_profile(&m, Pole::Zero, PI).unwrap();
        assert!((area - 2.0 * PI * FRAC_PI_3.sin()).abs() < 1e-9);
        assert!((area - 5.441_398).abs() < 1e-5);
    }

    #[test]
    fn pole_symmetry_for_symmetric_warps() {
        let m = WarpedMetric::perturbed_sphere(2, 0.05).unwrap();
        let total = m.total_volume();
        for frac in [0.1, 0.37, 0.5, 0.81] {
            let a = ball_profile(&m, Pole::Zero, frac * total).unwrap();
            let b = ball_profile(&m, Pole::End, frac * total).unwrap();
            assert!((a - b).abs() < 1e-9, "frac={frac}");
        }
    }

    #[test]
    fn mean_curvature_examples() {
        let sphere = WarpedMetric::round_sphere(2);
        assert!(
            (mean_curvature_sphere(&sphere, FRAC_PI_3).unwrap() - 1.0 / FRAC_PI_3.tan()).abs()
                < 1e-12
        );
        assert!((1.0 / FRAC_PI_3.tan() - 0.577_350).abs() < 1e-6);

        let flat = WarpedMetric::euclidean_ball(3, 4.0).unwrap();
        assert!((mean_curvature_sphere(&flat, 2.0).unwrap() - 0.5).abs() < 1e-14);

        let hyper = WarpedMetric::hyperbolic_ball(2, 3.0).unwrap();
        let coth = 1.0f64.cosh() / 1.0f64.sinh();
        assert!((mean_curvature_sphere(&hyper, 1.0).unwrap() - coth).abs() < 1e-12);
        assert!((coth - 1.313_035).abs() < 1e-6);

        assert!(mean_curvature_sphere(&sphere, 0.0).is_err());
        assert!(mean_curvature_sphere(&sphere, PI).is_err());
    }

    #[test]
    fn slope_of_ball_profile_is_mean_curvature() {
        // d(area)/d(volume) = (n-1) f'/f along the cap family.
        let m = WarpedMetric::perturbed_sphere(3, 0.05).unwrap();
        let total = m.total_volume();
        let h = 1e-6 * total;
        for frac in [0.2, 0.5, 0.8] {
            let beta = frac * total;
            let fd = (ball_profile(&m, Pole::Zero, beta + h).unwrap()
                - ball_profile(&m, Pole::Zero, beta - h).unwrap())
                / (2.0 * h);
            let r = m.radius_for_volume(Pole::Zero, beta).unwrap();
            let exact = 2.0 * mean_curvature_sphere(&m, r).unwrap();
            assert!((fd - exact).abs() < 1e-5, "frac={frac}: {fd} vs {exact}");
        }
    }

    #[test]
    fn round_sphere_candidates_are_caps_matching_the_space_form() {
        let m = WarpedMetric::round_sphere(2);
        let sf = SpaceForm::new(2, 1.0).unwrap();
        let total = m.total_volume();
        for frac in [0.05, 0.25, 0.5, 0.75, 0.95] {
            let c = candidate_profile(&m, frac * total).unwrap();
            assert!(
                matches!(c.witness, Witness::CapAtZero | Witness::CapAtEnd),
                "frac={frac}: {:?}",
                c.witness
            );
            let exact = sf.profile_h2(frac * total).unwrap().value;
            assert!((c.value - exact).abs() < 1e-8, "frac={frac}");
        }
    }

    #[test]
    fn small_volume_candidates_follow_the_flat_asymptotics() {
        let m = WarpedMetric::perturbed_sphere(2, 0.05).unwrap();
        let beta = 1e-6;
        let c = candidate_profile(&m, beta).unwrap();
        let constant = asymptotic_constant(2, 1.0).unwrap(); // n sigma_n^(1/n)
        let ratio = c.value / beta.powf(0.5);
        assert!((ratio - constant).abs() / constant < 0.01);
    }

    #[test]
    fn candidates_never_exceed_either_cap() {
        let m = WarpedMetric::perturbed_sphere(2, 0.05).unwrap();
        let total = m.total_volume();
        for beta in uniform_grid(33, 0.0, total) {
            let c = candidate_profile(&m, beta).unwrap();
            let cap0 = ball_profile(&m, Pole::Zero, beta).unwrap();
            let cap_l = ball_profile(&m, Pole::End, beta).unwrap();
            assert!(c.value <= cap0.min(cap_l) + 1e-12);
        }
    }

    #[test]
    fn candidate_complement_symmetry() {
        let m = WarpedMetric::perturbed_sphere(2, 0.02).unwrap();
        let total = m.total_volume();
        for frac in [0.1, 0.3, 0.45] {
            let a = candidate_profile(&m, frac * total).unwrap().value;
            let b = candidate_profile(&m, (1.0 - frac) * total).unwrap().value;
            assert!((a - b).abs() < 1e-8, "frac={frac}");
        }
    }
}
