//! Isoperimetric profile functions.
//!
//! A [`Profile`] is a positive function of enclosed volume: either the
//! normalized form (argument is a volume fraction in `(0, 1)`) or the
//! absolute form (argument is an enclosed volume). Closed-form profiles
//! evaluate value and derivatives anywhere in their domain; sampled
//! profiles live on a fixed grid and get derivatives from finite
//! differences.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numerics::fd_derivatives;

/// Which volume variable the profile is parameterized by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// Volume fraction beta in (0, 1); boundary area divided by total volume.
    Fraction,
    /// Absolute enclosed volume; plain boundary area.
    Absolute,
}

/// Value and derivatives of a profile at one point.
#[derive(Debug, Clone, Copy)]
pub struct ProfileEval {
    pub value: f64,
    pub slope: f64,
    pub curvature: f64,
}

type EvalFn = Arc<dyn Fn(f64) -> Result<ProfileEval> + Send + Sync>;

#[derive(Clone)]
enum Repr {
    ClosedForm(EvalFn),
    Sampled { grid: Vec<f64>, values: Vec<f64> },
}

/// A positive profile function with derivative access.
#[derive(Clone)]
pub struct Profile {
    dimension: u32,
    normalization: Normalization,
    domain: (f64, f64),
    repr: Repr,
}

impl std::fmt::Debug for Profile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Profile")
            .field("dimension", &self.dimension)
            .field("normalization", &self.normalization)
            .field("domain", &self.domain)
            .field("kind", &self.kind())
            .finish()
    }
}

impl Profile {
    /// Wrap a closed-form evaluator valid on the open interval `domain`.
    pub fn closed_form(
        dimension: u32,
        normalization: Normalization,
        domain: (f64, f64),
        eval: impl Fn(f64) -> Result<ProfileEval> + Send + Sync + 'static,
    ) -> Profile {
        Profile {
            dimension,
            normalization,
            domain,
            repr: Repr::ClosedForm(Arc::new(eval)),
        }
    }

    /// Wrap samples on a strictly increasing grid. Values must be
    /// positive and finite.
    pub fn sampled(
        dimension: u32,
        normalization: Normalization,
        grid: Vec<f64>,
        values: Vec<f64>,
    ) -> Result<Profile> {
        if grid.len() != values.len() {
            return Err(Error::Alignment(format!(
                "grid has {} points but values has {}",
                grid.len(),
                values.len()
            )));
        }
        if grid.len() < 3 {
            return Err(Error::domain("sampled profile needs at least 3 points"));
        }
        if grid.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::domain("profile grid must be strictly increasing"));
        }
        if let Some(&bad) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::Positivity(bad));
        }
        let domain = (grid[0], grid[grid.len() - 1]);
        Ok(Profile {
            dimension,
            normalization,
            domain,
            repr: Repr::Sampled { grid, values },
        })
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    /// Open interval on which the profile is defined (closed for sampled
    /// profiles, whose endpoints are honest samples).
    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn is_closed_form(&self) -> bool {
        matches!(self.repr, Repr::ClosedForm(_))
    }

    fn kind(&self) -> &'static str {
        match self.repr {
            Repr::ClosedForm(_) => "closed-form",
            Repr::Sampled { .. } => "sampled",
        }
    }

    /// Sample grid, when the profile is sampled.
    pub fn grid(&self) -> Option<&[f64]> {
        match &self.repr {
            Repr::Sampled { grid, .. } => Some(grid),
            Repr::ClosedForm(_) => None,
        }
    }

    /// Sample values, when the profile is sampled.
    pub fn sample_values(&self) -> Option<&[f64]> {
        match &self.repr {
            Repr::Sampled { values, .. } => Some(values),
            Repr::ClosedForm(_) => None,
        }
    }

    /// Locate `x` on the sample grid within a relative tolerance.
    pub fn locate(&self, x: f64) -> Result<usize> {
        let grid = self
            .grid()
            .ok_or_else(|| Error::Alignment("profile is closed-form, not sampled".into()))?;
        let idx = grid.partition_point(|&g| g < x);
        let tol = 1e-9 * x.abs().max(1.0);
        for candidate in [idx.saturating_sub(1), idx, idx + 1] {
            if let Some(&g) = grid.get(candidate) {
                if (g - x).abs() <= tol {
                    return Ok(candidate);
                }
            }
        }
        Err(Error::Alignment(format!(
            "{x} is not a sample point of the profile grid"
        )))
    }

    /// Profile value at `x`.
    ///
    /// For sampled profiles `x` must be a grid point.
    pub fn value(&self, x: f64) -> Result<f64> {
        match &self.repr {
            Repr::ClosedForm(_) => Ok(self.eval(x)?.value),
            Repr::Sampled { values, .. } => Ok(values[self.locate(x)?]),
        }
    }

    /// Value, slope, and curvature at `x`. Sampled profiles use the
    /// three-point finite-difference stencil, so `x` must be an interior
    /// grid point.
    pub fn eval(&self, x: f64) -> Result<ProfileEval> {
        match &self.repr {
            Repr::ClosedForm(eval) => {
                if !(x > self.domain.0 && x < self.domain.1) {
                    return Err(Error::domain(format!(
                        "{x} outside the profile domain ({}, {})",
                        self.domain.0, self.domain.1
                    )));
                }
                eval(x)
            }
            Repr::Sampled { grid, values } => {
                let i = self.locate(x)?;
                let (slope, curvature) = fd_derivatives(grid, values, i)?;
                Ok(ProfileEval {
                    value: values[i],
                    slope,
                    curvature,
                })
            }
        }
    }

    /// Profile of the metric scaled by `c` (absolute normalization only):
    /// lengths scale by sqrt(c), volumes by c^(n/2), areas by c^((n-1)/2),
    /// so the new profile at volume v is c^((n-1)/2) times the old one at
    /// volume c^(-n/2) v.
    pub fn scaled(&self, c: f64) -> Result<Profile> {
        if self.normalization != Normalization::Absolute {
            return Err(Error::domain(
                "the scaling law applies to absolute-volume profiles",
            ));
        }
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::domain("scale factor must be positive and finite"));
        }
        let n = self.dimension;
        let vol_scale = c.powf(n as f64 / 2.0);
        let area_scale = c.powf((n as f64 - 1.0) / 2.0);
        match &self.repr {
            Repr::ClosedForm(eval) => {
                let inner = Arc::clone(eval);
                let slope_scale = area_scale / vol_scale;
                let curvature_scale = slope_scale / vol_scale;
                Ok(Profile::closed_form(
                    n,
                    Normalization::Absolute,
                    (self.domain.0 * vol_scale, self.domain.1 * vol_scale),
                    move |v| {
                        let e = inner(v / vol_scale)?;
                        Ok(ProfileEval {
                            value: e.value * area_scale,
                            slope: e.slope * slope_scale,
                            curvature: e.curvature * curvature_scale,
                        })
                    },
                ))
            }
            Repr::Sampled { grid, values } => Profile::sampled(
                n,
                Normalization::Absolute,
                grid.iter().map(|v| v * vol_scale).collect(),
                values.iter().map(|a| a * area_scale).collect(),
            ),
        }
    }
}

/// `count` uniformly spaced points strictly inside `(lo, hi)`.
pub fn uniform_grid(count: usize, lo: f64, hi: f64) -> Vec<f64> {
    let span = hi - lo;
    (1..=count)
        .map(|j| lo + span * j as f64 / (count + 1) as f64)
        .collect()
}

/// `count` cosine-spaced points strictly inside `(0, 1)`, graded toward
/// both endpoints to resolve the beta^((n-1)/n) boundary behavior.
pub fn cosine_grid(count: usize) -> Vec<f64> {
    (1..=count)
        .map(|j| (1.0 - (std::f64::consts::PI * j as f64 / (count + 1) as f64).cos()) / 2.0)
        .collect()
}

/// Cosine-spaced points strictly inside `(lo, hi)`.
pub fn cosine_grid_on(count: usize, lo: f64, hi: f64) -> Vec<f64> {
    cosine_grid(count)
        .into_iter()
        .map(|t| lo + (hi - lo) * t)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampled_profile_roundtrip() {
        let grid = vec![0.1, 0.2, 0.3, 0.4];
        let values = vec![1.0, 2.0, 2.5, 2.0];
        let p = Profile::sampled(2, Normalization::Fraction, grid, values).unwrap();
        assert_eq!(p.value(0.3).unwrap(), 2.5);
        assert!(p.locate(0.35).is_err());
        assert!(p.eval(0.1).is_err()); // boundary stencil
    }

    #[test]
    fn positivity_is_enforced() {
        let err = Profile::sampled(
            2,
            Normalization::Fraction,
            vec![0.1, 0.2, 0.3],
            vec![1.0, 0.0, 1.0],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Positivity(_)));
    }

    #[test]
    fn grids_are_interior_and_symmetric() {
        let g = cosine_grid(9);
        assert_eq!(g.len(), 9);
        assert!((g[4] - 0.5).abs() < 1e-15);
        assert!(g[0] > 0.0 && g[8] < 1.0);
        for (a, b) in g.iter().zip(g.iter().rev()) {
            assert!((a + b - 1.0).abs() < 1e-12);
        }
        let u = uniform_grid(9, 0.0, 1.0);
        assert!((u[0] - 0.1).abs() < 1e-15 && (u[8] - 0.9).abs() < 1e-15);
    }

    #[test]
    fn euclidean_scaling_law_is_identity() {
        // In flat space h2(v) = 2 sqrt(pi v) for n = 2; the scaling law
        // maps it to itself.
        let p = Profile::closed_form(2, Normalization::Absolute, (0.0, f64::INFINITY), |v| {
            Ok(ProfileEval {
                value: 2.0 * (std::f64::consts::PI * v).sqrt(),
                slope: (std::f64::consts::PI / v).sqrt(),
                curvature: -0.5 * std::f64::consts::PI.sqrt() * v.powf(-1.5),
            })
        });
        let scaled = p.scaled(3.7).unwrap();
        for v in [0.5, 1.0, 8.0] {
            let a = p.eval(v).unwrap();
            let b = scaled.eval(v).unwrap();
            assert!((a.value - b.value).abs() < 1e-12 * a.value);
            assert!((a.slope - b.slope).abs() < 1e-12 * a.slope.abs());
        }
    }
}
