//! Brent-style bracketed root finding.

use crate::error::{Error, Result};

/// Bracket and stopping rule for [`find_root`].
#[derive(Debug, Clone, Copy)]
pub struct RootSpec {
    /// Left bracket endpoint.
    pub a: f64,
    /// Right bracket endpoint.
    pub b: f64,
    /// Tolerance on the argument.
    pub x_tol: f64,
    /// Iteration budget.
    pub max_iter: usize,
}

impl RootSpec {
    pub fn new(a: f64, b: f64) -> Self {
        RootSpec {
            a,
            b,
            x_tol: 1e-12,
            max_iter: 200,
        }
    }

    pub fn with_tolerance(mut self, x_tol: f64) -> Self {
        self.x_tol = x_tol;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.a.is_finite() && self.b.is_finite()) || self.a == self.b {
            return Err(Error::domain(format!(
                "bracket endpoints must be finite and distinct, got [{}, {}]",
                self.a, self.b
            )));
        }
        if !(self.x_tol > 0.0) {
            return Err(Error::domain("root tolerance must be positive"));
        }
        if self.max_iter == 0 {
            return Err(Error::domain("iteration budget must be at least 1"));
        }
        Ok(())
    }
}

/// Find a root of `f` inside the bracket of `spec` by Brent's method
/// (inverse quadratic interpolation guarded by bisection).
pub fn find_root<F: Fn(f64) -> f64>(f: F, spec: &RootSpec) -> Result<f64> {
    spec.validate()?;
    let (mut a, mut b) = (spec.a, spec.b);
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::BracketSign { a, b, fa, fb });
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = b - a;

    for _ in 0..spec.max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * spec.x_tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // Attempt inverse quadratic interpolation (secant when a == c).
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * xm * s, 1.0 - s)
            } else {
                let q = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0)),
                    (q - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b += d;
        } else {
            b += tol1.copysign(xm);
        }
        fb = f(b);
    }

    Err(Error::RootBudget {
        best: b,
        max_iter: spec.max_iter,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

    #[test]
    fn cosine_root() {
        let r = find_root(|x| x.cos(), &RootSpec::new(1.0, 2.0)).unwrap();
        assert!((r - FRAC_PI_2).abs() <= 1e-12);
    }

    #[test]
    fn cap_area_inversion_on_unit_two_sphere() {
        // beta(r) = (1 - cos r) / 2 = 1/4 at r = pi/3.
        let r = find_root(
            |r: f64| (1.0 - r.cos()) / 2.0 - 0.25,
            &RootSpec::new(1e-9, PI),
        )
        .unwrap();
        assert!((r - FRAC_PI_3).abs() <= 1e-11);
    }

    #[test]
    fn linear_root() {
        let r = find_root(|x| x - 1.0, &RootSpec::new(0.0, 2.0)).unwrap();
        assert!((r - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn same_sign_bracket_is_rejected() {
        let err = find_root(|x| x * x + 1.0, &RootSpec::new(-1.0, 1.0)).unwrap_err();
        assert!(matches!(err, Error::BracketSign { .. }));
    }

    #[test]
    fn residual_bounded_by_slope_times_tolerance() {
        let f = |x: f64| x.exp() - 2.0;
        let spec = RootSpec::new(0.0, 1.0).with_tolerance(1e-10);
        let r = find_root(f, &spec).unwrap();
        let slope = (f(r + 1e-6) - f(r - 1e-6)) / 2e-6;
        assert!(f(r).abs() <= slope.abs() * spec.x_tol * 10.0 + 1e-14);
    }
}
