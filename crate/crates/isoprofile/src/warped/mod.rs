//! Rotationally symmetric test manifolds dr^2 + f(r)^2 g_{S^{n-1}}.
//!
//! The warp function determines everything: curvature, geodesic-ball
//! volumes and areas from either pole, distance-sphere mean curvature,
//! and the cap/band candidate profiles. Warps come as closed-form
//! callbacks or as dense samples (CSV rows `r,f,fp,fpp`).

mod comparison;
mod curvature;
mod profiles;

pub use comparison::{
    ball_comparison_check, heintze_karcher_bound, heintze_karcher_majorant, BallComparisonPoint,
    BallComparisonReport, ComparisonViolation, Ingredient,
};
pub use curvature::{ricci_lower_bound, RicciBoundReport};
pub use profiles::{
    ball_profile, candidate_h2_profile, candidate_profile, mean_curvature_sphere, Candidate,
    Witness,
};

use std::io::Read;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::numerics::{find_root, kronrod15, RootSpec};
use crate::spaceform::{sk, unit_sphere_area};

/// Boundary behavior of the warp function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topology {
    /// Two smooth poles: f(0) = f(L) = 0, f'(0) = 1, f'(L) = -1.
    ClosedSphere,
    /// One smooth pole: f(0) = 0, f'(0) = 1; the far end is a boundary.
    Ball,
}

/// Which pole distance is measured from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pole {
    Zero,
    End,
}

type WarpFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Warp {
    ClosedForm {
        f: WarpFn,
        df: WarpFn,
        d2f: WarpFn,
    },
    Sampled {
        r: Vec<f64>,
        f: Vec<f64>,
        fp: Vec<f64>,
        fpp: Vec<f64>,
    },
}

/// Number of cells in the cumulative volume table.
const VOLUME_CELLS: usize = 4096;

/// A rotationally symmetric metric given by its warp function on [0, L].
pub struct WarpedMetric {
    n: u32,
    length: f64,
    topology: Topology,
    warp: Warp,
    volume_table: OnceLock<Vec<f64>>,
}

impl Clone for WarpedMetric {
    fn clone(&self) -> Self {
        WarpedMetric {
            n: self.n,
            length: self.length,
            topology: self.topology,
            warp: self.warp.clone(),
            volume_table: self.volume_table.clone(),
        }
    }
}

impl std::fmt::Debug for WarpedMetric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WarpedMetric")
            .field("n", &self.n)
            .field("length", &self.length)
            .field("topology", &self.topology)
            .finish()
    }
}

fn hermite_locate(xs: &[f64], t: f64) -> usize {
    let idx = xs.partition_point(|&x| x <= t);
    idx.clamp(1, xs.len() - 1) - 1
}

impl WarpedMetric {
    /// Wrap closed-form `f`, `f'`, `f''` callbacks; the smooth-closure
    /// conditions of `topology` are validated to 1e-8.
    pub fn closed_form(
        n: u32,
        length: f64,
        topology: Topology,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        df: impl Fn(f64) -> f64 + Send + Sync + 'static,
        d2f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let metric = WarpedMetric {
            n,
            length,
            topology,
            warp: Warp::ClosedForm {
                f: Arc::new(f),
                df: Arc::new(df),
                d2f: Arc::new(d2f),
            },
            volume_table: OnceLock::new(),
        };
        metric.validate(1e-8)?;
        Ok(metric)
    }

    /// Build from dense samples `(r, f, f', f'')` with strictly
    /// increasing radii from 0 to L; closure conditions are validated to
    /// the relaxed sampled tolerance 1e-5.
    pub fn from_samples(
        n: u32,
        topology: Topology,
        rows: Vec<(f64, f64, f64, f64)>,
    ) -> Result<Self> {
        if rows.len() < 4 {
            return Err(Error::InvalidMetric(
                "sampled warp needs at least 4 rows".into(),
            ));
        }
        if rows.windows(2).any(|w| !(w[0].0 < w[1].0)) {
            return Err(Error::InvalidMetric(
                "sample radii must be strictly increasing".into(),
            ));
        }
        if rows[0].0.abs() > 1e-12 * rows.last().unwrap().0.max(1.0) {
            return Err(Error::InvalidMetric("sample radii must start at 0".into()));
        }
        let length = rows.last().unwrap().0;
        let mut r = Vec::with_capacity(rows.len());
        let mut f = Vec::with_capacity(rows.len());
        let mut fp = Vec::with_capacity(rows.len());
        let mut fpp = Vec::with_capacity(rows.len());
        for (ri, fi, fpi, fppi) in rows {
            if !(ri.is_finite() && fi.is_finite() && fpi.is_finite() && fppi.is_finite()) {
                return Err(Error::InvalidMetric("samples must be finite".into()));
            }
            r.push(ri);
            f.push(fi);
            fp.push(fpi);
            fpp.push(fppi);
        }
        let metric = WarpedMetric {
            n,
            length,
            topology,
            warp: Warp::Sampled { r, f, fp, fpp },
            volume_table: OnceLock::new(),
        };
        metric.validate(1e-5)?;
        Ok(metric)
    }

    /// Read warp samples from CSV with header `r,f,fp,fpp`.
    pub fn from_csv(n: u32, topology: Topology, reader: impl Read) -> Result<Self> {
        let mut csv_reader = csv::Reader::from_reader(reader);
        let headers = csv_reader
            .headers()
            .map_err(|e| Error::InvalidMetric(format!("bad CSV header: {e}")))?
            .clone();
        let expected = ["r", "f", "fp", "fpp"];
        let names: Vec<&str> = headers.iter().map(str::trim).collect();
        if names != expected {
            return Err(Error::InvalidMetric(format!(
                "CSV header must be r,f,fp,fpp, got {}",
                names.join(",")
            )));
        }
        let mut rows = Vec::new();
        for record in csv_reader.records() {
            let record = record.map_err(|e| Error::InvalidMetric(format!("bad CSV row: {e}")))?;
            let mut parsed = [0.0f64; 4];
            for (slot, field) in parsed.iter_mut().zip(record.iter()) {
                *slot = field
                    .trim()
                    .parse()
                    .map_err(|e| Error::InvalidMetric(format!("bad CSV number {field:?}: {e}")))?;
            }
            rows.push((parsed[0], parsed[1], parsed[2], parsed[3]));
        }
        Self::from_samples(n, topology, rows)
    }

    /// The round sphere of curvature 1: f = sin r on [0, pi].
    pub fn round_sphere(n: u32) -> Self {
        WarpedMetric::closed_form(
            n,
            std::f64::consts::PI,
            Topology::ClosedSphere,
            |r| r.sin(),
            |r| r.cos(),
            |r| -r.sin(),
        )
        .expect("the round sphere closes smoothly")
    }

    /// The symmetric perturbation f = sin r (1 + eps sin^2 r) on [0, pi].
    ///
    /// For eps >= 0 its largest Ricci lower bound is 1 - 6 eps,
    /// approached at the poles.
    pub fn perturbed_sphere(n: u32, eps: f64) -> Result<Self> {
        if !(eps.is_finite() && eps > -1.0 / 6.0 && eps < 1.0 / 6.0) {
            return Err(Error::domain(
                "perturbation strength must keep the curvature positive",
            ));
        }
        WarpedMetric::closed_form(
            n,
            std::f64::consts::PI,
            Topology::ClosedSphere,
            move |r| r.sin() * (1.0 + eps * r.sin() * r.sin()),
            move |r| r.cos() * (1.0 + 3.0 * eps * r.sin() * r.sin()),
            move |r| -r.sin() * (1.0 - 3.0 * eps * (2.0 - 3.0 * r.sin() * r.sin())),
        )
    }

    /// Flat ball of radius `length`: f = r.
    pub fn euclidean_ball(n: u32, length: f64) -> Result<Self> {
        WarpedMetric::closed_form(n, length, Topology::Ball, |r| r, |_| 1.0, |_| 0.0)
    }

    /// Hyperbolic ball of radius `length`: f = sinh r.
    pub fn hyperbolic_ball(n: u32, length: f64) -> Result<Self> {
        WarpedMetric::closed_form(
            n,
            length,
            Topology::Ball,
            |r| r.sinh(),
            |r| r.cosh(),
            |r| r.sinh(),
        )
    }

    /// Space form of curvature `kappa` as a warped metric: f = s_kappa,
    /// closed for kappa > 0, a ball of radius `length` otherwise.
    pub fn space_form(n: u32, kappa: f64, length: f64) -> Result<Self> {
        if kappa > 0.0 {
            WarpedMetric::closed_form(
                n,
                std::f64::consts::PI / kappa.sqrt(),
                Topology::ClosedSphere,
                move |r| sk(kappa, r),
                move |r| crate::spaceform::ck(kappa, r),
                move |r| -kappa * sk(kappa, r),
            )
        } else {
            WarpedMetric::closed_form(
                n,
                length,
                Topology::Ball,
                move |r| sk(kappa, r),
                move |r| crate::spaceform::ck(kappa, r),
                move |r| -kappa * sk(kappa, r),
            )
        }
    }

    /// The metric scaled by `c > 0`: lengths scale by sqrt(c), the warp
    /// becomes sqrt(c) f(r / sqrt(c)), and curvature bounds divide by c.
    pub fn rescaled(&self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::domain("scale factor must be positive and finite"));
        }
        let root = c.sqrt();
        let length = self.length * root;
        match &self.warp {
            Warp::ClosedForm { f, df, d2f } => {
                let (f, df, d2f) = (Arc::clone(f), Arc::clone(df), Arc::clone(d2f));
                WarpedMetric::closed_form(
                    self.n,
                    length,
                    self.topology,
                    move |r| root * f(r / root),
                    move |r| df(r / root),
                    move |r| d2f(r / root) / root,
                )
            }
            Warp::Sampled { r, f, fp, fpp } => {
                let rows = r
                    .iter()
                    .zip(f)
                    .zip(fp)
                    .zip(fpp)
                    .map(|(((ri, fi), fpi), fppi)| (ri * root, fi * root, *fpi, fppi / root))
                    .collect();
                WarpedMetric::from_samples(self.n, self.topology, rows)
            }
        }
    }

    fn validate(&self, tol: f64) -> Result<()> {
        if self.n < 2 {
            return Err(Error::domain("dimension must be at least 2"));
        }
        if !(self.length > 0.0 && self.length.is_finite()) {
            return Err(Error::domain("radial extent must be positive and finite"));
        }
        let l = self.length;
        let check = |what: &str, got: f64, want: f64| -> Result<()> {
            if (got - want).abs() > tol {
                return Err(Error::InvalidMetric(format!(
                    "{what} = {got:e}, expected {want} within {tol:e}"
                )));
            }
            Ok(())
        };
        check("f(0)", self.warp(0.0), 0.0)?;
        check("f'(0)", self.warp_d1(0.0), 1.0)?;
        if self.topology == Topology::ClosedSphere {
            check("f(L)", self.warp(l), 0.0)?;
            check("f'(L)", self.warp_d1(l), -1.0)?;
        }
        for j in 1..=256 {
            let r = l * j as f64 / 257.0;
            if !(self.warp(r) > 0.0) {
                return Err(Error::InvalidMetric(format!(
                    "warp function is not positive at r = {r}"
                )));
            }
        }
        Ok(())
    }

    pub fn dimension(&self) -> u32 {
        self.n
    }

    /// Radial extent L; for the closed topology this is the pole-to-pole
    /// distance, used as the diameter of the test family.
    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    /// Warp value f(r); sampled warps interpolate with cubic Hermite
    /// splines through (f, f').
    pub fn warp(&self, r: f64) -> f64 {
        match &self.warp {
            Warp::ClosedForm { f, .. } => f(r),
            Warp::Sampled { r: xs, f, fp, .. } => {
                let t = r.clamp(0.0, self.length);
                let k = hermite_locate(xs, t);
                let h = xs[k + 1] - xs[k];
                let s = (t - xs[k]) / h;
                let (s2, s3) = (s * s, s * s * s);
                (2.0 * s3 - 3.0 * s2 + 1.0) * f[k]
                    + (s3 - 2.0 * s2 + s) * h * fp[k]
                    + (-2.0 * s3 + 3.0 * s2) * f[k + 1]
                    + (s3 - s2) * h * fp[k + 1]
            }
        }
    }

    /// First derivative f'(r).
    pub fn warp_d1(&self, r: f64) -> f64 {
        match &self.warp {
            Warp::ClosedForm { df, .. } => df(r),
            Warp::Sampled { r: xs, fp, fpp, .. } => {
                let t = r.clamp(0.0, self.length);
                let k = hermite_locate(xs, t);
                let h = xs[k + 1] - xs[k];
                let s = (t - xs[k]) / h;
                let (s2, s3) = (s * s, s * s * s);
                (2.0 * s3 - 3.0 * s2 + 1.0) * fp[k]
                    + (s3 - 2.0 * s2 + s) * h * fpp[k]
                    + (-2.0 * s3 + 3.0 * s2) * fp[k + 1]
                    + (s3 - s2) * h * fpp[k + 1]
            }
        }
    }

    /// Second derivative f''(r); sampled warps interpolate it linearly.
    pub fn warp_d2(&self, r: f64) -> f64 {
        match &self.warp {
            Warp::ClosedForm { d2f, .. } => d2f(r),
            Warp::Sampled { r: xs, fpp, .. } => {
                let t = r.clamp(0.0, self.length);
                let k = hermite_locate(xs, t);
                let s = (t - xs[k]) / (xs[k + 1] - xs[k]);
                fpp[k] + s * (fpp[k + 1] - fpp[k])
            }
        }
    }

    /// Boundary area of the distance sphere at coordinate `r`:
    /// omega_{n-1} f(r)^(n-1).
    pub fn sphere_area_at(&self, r: f64) -> f64 {
        unit_sphere_area(self.n) * self.warp(r).powi(self.n as i32 - 1)
    }

    fn volume_integrand(&self, r: f64) -> f64 {
        self.warp(r).powi(self.n as i32 - 1)
    }

    /// Cumulative volume table at uniform radii; each cell is one
    /// Gauss-Kronrod panel, far below round-off for smooth warps.
    fn volume_table(&self) -> &[f64] {
        self.volume_table.get_or_init(|| {
            let omega = unit_sphere_area(self.n);
            let mut table = Vec::with_capacity(VOLUME_CELLS + 1);
            table.push(0.0);
            let mut acc = 0.0;
            for i in 0..VOLUME_CELLS {
                let a = self.length * i as f64 / VOLUME_CELLS as f64;
                let b = self.length * (i + 1) as f64 / VOLUME_CELLS as f64;
                let (panel, _) = kronrod15(&|r| self.volume_integrand(r), a, b);
                acc += omega * panel;
                table.push(acc);
            }
            table
        })
    }

    /// Total volume omega_{n-1} int_0^L f^(n-1).
    pub fn total_volume(&self) -> f64 {
        *self.volume_table().last().expect("table is non-empty")
    }

    /// Volume of the ball of radius `rho` about the chosen pole.
    pub fn volume_from(&self, pole: Pole, rho: f64) -> Result<f64> {
        if !(rho >= 0.0 && rho <= self.length * (1.0 + 1e-12)) {
            return Err(Error::domain(format!(
                "ball radius must lie in [0, {}], got {rho}",
                self.length
            )));
        }
        let rho = rho.min(self.length);
        match pole {
            Pole::Zero => {
                let table = self.volume_table();
                let cell_width = self.length / VOLUME_CELLS as f64;
                let cell = ((rho / cell_width) as usize).min(VOLUME_CELLS - 1);
                let start = cell as f64 * cell_width;
                let (panel, _) = kronrod15(&|r| self.volume_integrand(r), start, rho);
                Ok(table[cell] + unit_sphere_area(self.n) * panel)
            }
            Pole::End => Ok(self.total_volume() - self.volume_from(Pole::Zero, self.length - rho)?),
        }
    }

    /// Invert the monotone map rho -> volume_from(pole, rho).
    pub fn radius_for_volume(&self, pole: Pole, v: f64) -> Result<f64> {
        let total = self.total_volume();
        if !(v > 0.0 && v <= total * (1.0 + 1e-12)) {
            return Err(Error::domain(format!(
                "volume must lie in (0, {total}], got {v}"
            )));
        }
        let v = v.min(total);
        match pole {
            Pole::Zero => {
                let table = self.volume_table();
                let cell_width = self.length / VOLUME_CELLS as f64;
                let idx = table.partition_point(|&c| c < v).clamp(1, VOLUME_CELLS);
                let lo = (idx - 1) as f64 * cell_width;
                let hi = (idx as f64 * cell_width).min(self.length);
                let spec = RootSpec::new(lo, hi).with_tolerance(1e-14 * self.length.max(1.0));
                find_root(
                    |r| self.volume_from(Pole::Zero, r).unwrap_or(f64::NAN) - v,
                    &spec,
                )
            }
            Pole::End => Ok(self.length - self.radius_for_volume(Pole::Zero, total - v)?),
        }
    }
}
