//! Numerical second-order subjets of sampled profiles.
//!
//! A test parabola psi(b0) + p (b - b0) + X (b - b0)^2 / 2 touches the
//! samples from below on a window around b0. The admissible slopes are
//! bracketed by one-sided chord slopes; for each sampled slope p the
//! largest admissible curvature X(p) is the minimum over the window of
//! 2 (psi(b) - psi(b0) - p (b - b0)) / (b - b0)^2.
//!
//! A downward corner admits no touching parabola: its left chords exceed
//! its right chords by an O(1) gap, which is how emptiness is detected on
//! a finite grid (a smooth point only crosses by O(grid spacing)).

use crate::error::{Error, Result};
use crate::profile::Profile;

/// Window and sampling parameters for [`subjet_at`].
#[derive(Debug, Clone, Copy)]
pub struct SubjetSpec {
    /// Half-width of the test window in grid points (at least 5).
    pub window: usize,
    /// Number of equispaced interior slope samples; the interval
    /// endpoints are always included on top of these.
    pub slope_samples: usize,
    /// Chord-gap threshold separating a genuine downward corner from the
    /// O(grid spacing) crossing of a smooth concave point.
    pub slope_gap_tol: f64,
}

impl Default for SubjetSpec {
    fn default() -> Self {
        SubjetSpec {
            window: 8,
            slope_samples: 33,
            slope_gap_tol: 0.5,
        }
    }
}

/// Admissible test-parabola data at one grid point.
#[derive(Debug, Clone)]
pub struct Subjet {
    /// The touching location b0.
    pub location: f64,
    /// Supremum of left chord slopes.
    pub slope_lo: f64,
    /// Infimum of right chord slopes.
    pub slope_hi: f64,
    /// Sampled (slope, max admissible curvature) pairs; empty when no
    /// parabola touches from below.
    pub samples: Vec<(f64, f64)>,
    pub empty: bool,
}

impl Subjet {
    /// The sampled pair whose slope is closest to the chord-interval
    /// midpoint; at smooth points this reproduces the derivatives.
    pub fn best(&self) -> Option<(f64, f64)> {
        if self.empty {
            return None;
        }
        let mid = 0.5 * (self.slope_lo + self.slope_hi);
        self.samples
            .iter()
            .min_by(|a, b| (a.0 - mid).abs().total_cmp(&(b.0 - mid).abs()))
            .copied()
    }
}

/// Compute the numerical subjet of a sampled profile at grid `index`.
pub fn subjet_at(profile: &Profile, index: usize, spec: &SubjetSpec) -> Result<Subjet> {
    let grid = profile
        .grid()
        .ok_or_else(|| Error::domain("subjets are defined for sampled profiles"))?;
    let values = profile.sample_values().expect("sampled profile has values");
    if spec.window < 5 {
        return Err(Error::domain("subjet window must cover at least 5 points"));
    }
    if index < spec.window || index + spec.window >= grid.len() {
        return Err(Error::BoundaryIndex {
            index,
            len: grid.len(),
        });
    }

    let b0 = grid[index];
    let v0 = values[index];

    let mut slope_lo = f64::NEG_INFINITY;
    for j in index - spec.window..index {
        slope_lo = slope_lo.max((values[j] - v0) / (grid[j] - b0));
    }
    let mut slope_hi = f64::INFINITY;
    for j in index + 1..=index + spec.window {
        slope_hi = slope_hi.min((values[j] - v0) / (grid[j] - b0));
    }

    let empty = slope_lo > slope_hi + spec.slope_gap_tol;
    let mut samples = Vec::new();
    if !empty {
        let lo = slope_lo.min(slope_hi);
        let hi = slope_lo.max(slope_hi);
        let count = spec.slope_samples + 1;
        let max_curvature = |p: f64| {
            let mut x = f64::INFINITY;
            for j in index - spec.window..=index + spec.window {
                if j == index {
                    continue;
                }
                let db = grid[j] - b0;
                x = x.min(2.0 * (values[j] - v0 - p * db) / (db * db));
            }
            x
        };
        if hi - lo <= f64::EPSILON * (1.0 + hi.abs()) {
            samples.push((lo, max_curvature(lo)));
        } else {
            for k in 0..=count {
                let p = lo + (hi - lo) * k as f64 / count as f64;
                samples.push((p, max_curvature(p)));
            }
        }
    }

    Ok(Subjet {
        location: b0,
        slope_lo,
        slope_hi,
        samples,
        empty,
    })
}
