//! Shared fixtures for the benchmark targets.

use isoprofile::warped::ricci_lower_bound;
use isoprofile::WarpedMetric;

/// The standard perturbed test metric rescaled to a unit Ricci bound.
pub fn unit_perturbed_sphere(eps: f64) -> WarpedMetric {
    let m = WarpedMetric::perturbed_sphere(2, eps).expect("valid perturbation");
    let kappa = ricci_lower_bound(&m).expect("smooth closure").kappa_star;
    m.rescaled(kappa).expect("positive bound")
}
