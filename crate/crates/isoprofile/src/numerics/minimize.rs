//! One-dimensional minimization by golden-section search.

use crate::error::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_8; // (sqrt(5) - 1) / 2
const MAX_ITER: usize = 256;

/// Minimize `f` over `[a, b]` to argument tolerance `tol`.
///
/// Returns `(argmin, minimum)`. The caller supplies a unimodal function
/// or accepts a local result; the iteration budget is generous enough
/// that a positive `tol` is always reached before it runs out.
pub fn minimize_1d<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<(f64, f64)> {
    if !(a < b) {
        return Err(Error::domain(format!(
            "minimization interval must satisfy a < b, got [{a}, {b}]"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("minimization tolerance must be positive"));
    }

    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);

    let mut iter = 0;
    while hi - lo > tol && iter < MAX_ITER {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
        iter += 1;
    }

    Ok(if f1 <= f2 { (x1, f1) } else { (x2, f2) })
}
