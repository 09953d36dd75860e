//! Target selection shared by the subcommands.

use std::fs::File;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;
use isoprofile::{SpaceForm, Topology, WarpedMetric};

#[derive(Debug, Args)]
pub struct TargetArgs {
    /// Space-form target as key=value pairs, e.g. `--spaceform n=2 kappa=1`
    #[arg(long, num_args = 1..=2, value_name = "KEY=VALUE", conflicts_with = "warp")]
    pub spaceform: Option<Vec<String>>,

    /// Named warped metric: sin | sin-perturbed | euclidean | hyperbolic | csv
    #[arg(long)]
    pub warp: Option<String>,

    /// Perturbation strength for `--warp sin-perturbed`
    #[arg(long, default_value_t = 0.05)]
    pub eps: f64,

    /// Warp samples for `--warp csv` (header `r,f,fp,fpp`)
    #[arg(long, value_name = "PATH")]
    pub warp_csv: Option<PathBuf>,

    /// Topology of a CSV warp: closed-sphere | ball
    #[arg(long, default_value = "closed-sphere")]
    pub topology: String,

    /// Dimension of warped targets
    #[arg(long, default_value_t = 2)]
    pub n: u32,

    /// Radial extent of ball-type warps (euclidean, hyperbolic)
    #[arg(long, default_value_t = 1.0)]
    pub length: f64,
}

pub enum Target {
    SpaceForm(SpaceForm),
    Warp(Box<WarpedMetric>),
}

impl TargetArgs {
    pub fn resolve(&self) -> Result<Target> {
        match (&self.spaceform, &self.warp) {
            (Some(pairs), None) => {
                let mut n: Option<u32> = None;
                let mut kappa: Option<f64> = None;
                for pair in pairs {
                    let (key, value) = pair
                        .split_once('=')
                        .ok_or_else(|| anyhow!("expected key=value, got {pair:?}"))?;
                    match key.trim() {
                        "n" => n = Some(value.trim().parse().context("parsing n")?),
                        "kappa" | "k" => {
                            kappa = Some(value.trim().parse().context("parsing kappa")?)
                        }
                        other => bail!("unknown space-form key {other:?} (use n, kappa)"),
                    }
                }
                let n = n.ok_or_else(|| anyhow!("--spaceform needs n=<dim>"))?;
                let kappa = kappa.ok_or_else(|| anyhow!("--spaceform needs kappa=<curvature>"))?;
                Ok(Target::SpaceForm(SpaceForm::new(n, kappa)?))
            }
            (None, Some(name)) => {
                let metric = match name.as_str() {
                    "sin" => WarpedMetric::round_sphere(self.n),
                    "sin-perturbed" => WarpedMetric::perturbed_sphere(self.n, self.eps)?,
                    "euclidean" => WarpedMetric::euclidean_ball(self.n, self.length)?,
                    "hyperbolic" => WarpedMetric::hyperbolic_ball(self.n, self.length)?,
                    "csv" => {
                        let path = self
                            .warp_csv
                            .as_ref()
                            .ok_or_else(|| anyhow!("--warp csv needs --warp-csv <path>"))?;
                        let topology = match self.topology.as_str() {
                            "closed-sphere" => Topology::ClosedSphere,
                            "ball" => Topology::Ball,
                            other => bail!("unknown topology {other:?}"),
                        };
                        let file = File::open(path)
                            .with_context(|| format!("opening {}", path.display()))?;
                        WarpedMetric::from_csv(self.n, topology, file)?
                    }
                    other => bail!(
                        "unknown warp {other:?} (sin, sin-perturbed, euclidean, hyperbolic, csv)"
                    ),
                };
                Ok(Target::Warp(Box::new(metric)))
            }
            (None, None) => bail!("select a target with --spaceform or --warp"),
            (Some(_), Some(_)) => unreachable!("clap forbids both targets"),
        }
    }

    /// Ordered config echo for the report.
    pub fn config_entries(&self) -> Vec<(String, String)> {
        let mut entries = Vec::new();
        if let Some(pairs) = &self.spaceform {
            entries.push(("target".into(), "spaceform".into()));
            entries.push(("spaceform".into(), pairs.join(" ")));
        }
        if let Some(warp) = &self.warp {
            entries.push(("target".into(), "warp".into()));
            entries.push(("warp".into(), warp.clone()));
            entries.push(("n".into(), self.n.to_string()));
            if warp == "sin-perturbed" {
                entries.push(("eps".into(), self.eps.to_string()));
            }
            if matches!(warp.as_str(), "euclidean" | "hyperbolic") {
                entries.push(("length".into(), self.length.to_string()));
            }
            if let Some(path) = &self.warp_csv {
                entries.push(("warp_csv".into(), path.display().to_string()));
                entries.push(("topology".into(), self.topology.clone()));
            }
        }
        entries
    }
}
