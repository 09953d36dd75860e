//! Geometry of the simply connected space forms: geodesic-ball volume
//! and boundary area, the two profile functions with closed-form
//! derivatives, and the small-volume asymptotic constant.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::{find_root, integrate, QuadratureSpec, RootSpec};
use crate::profile::{Normalization, Profile, ProfileEval};

/// Generalized sine: solution of s'' = -kappa * s with s(0) = 0, s'(0) = 1.
///
/// `sin(sqrt(k) t)/sqrt(k)` for k > 0, `t` for k = 0, and
/// `sinh(sqrt(-k) t)/sqrt(-k)` for k < 0; continuous in kappa at 0.
pub fn sk(kappa: f64, t: f64) -> f64 {
    if kappa > 0.0 {
        let rk = kappa.sqrt();
        (rk * t).sin() / rk
    } else if kappa < 0.0 {
        let rk = (-kappa).sqrt();
        (rk * t).sinh() / rk
    } else {
        t
    }
}

/// Generalized cosine, the derivative of [`sk`].
pub fn ck(kappa: f64, t: f64) -> f64 {
    if kappa > 0.0 {
        (kappa.sqrt() * t).cos()
    } else if kappa < 0.0 {
        ((-kappa).sqrt() * t).cosh()
    } else {
        1.0
    }
}

/// Volume of the unit ball in Euclidean n-space, via the half-integer
/// Gamma recursion sigma_n = (2 pi / n) sigma_{n-2}.
pub fn unit_ball_volume(n: u32) -> f64 {
    let mut even = 1.0; // sigma_0
    let mut odd = 2.0; // sigma_1
    for k in 2..=n {
        if k.is_multiple_of(2) {
            even *= 2.0 * PI / k as f64;
        } else {
            odd *= 2.0 * PI / k as f64;
        }
    }
    if n.is_multiple_of(2) {
        even
    } else {
        odd
    }
}

/// Area of the unit sphere S^{n-1} in Euclidean n-space: n * sigma_n.
pub fn unit_sphere_area(n: u32) -> f64 {
    n as f64 * unit_ball_volume(n)
}

/// Small-volume asymptotic constant of the normalized profile:
/// h1(beta) / beta^((n-1)/n) -> n sigma_n^(1/n) / |M|^(1/n) as beta -> 0.
pub fn asymptotic_constant(n: u32, total_volume: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain("dimension must be at least 2"));
    }
    if !(total_volume > 0.0) {
        return Err(Error::domain("total volume must be positive"));
    }
    let inv_n = 1.0 / n as f64;
    Ok(n as f64 * unit_ball_volume(n).powf(inv_n) / total_volume.powf(inv_n))
}

/// Simply connected space form of dimension `n` and constant curvature
/// `kappa`: the round sphere (kappa > 0), Euclidean space (kappa = 0), or
/// hyperbolic space (kappa < 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceForm {
    n: u32,
    kappa: f64,
}

impl SpaceForm {
    pub fn new(n: u32, kappa: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain("dimension must be at least 2"));
        }
        if !kappa.is_finite() {
            return Err(Error::domain("curvature must be finite"));
        }
        Ok(SpaceForm { n, kappa })
    }

    pub fn dimension(&self) -> u32 {
        self.n
    }

    pub fn curvature(&self) -> f64 {
        self.kappa
    }

    /// Diameter pi / sqrt(kappa), finite only for positive curvature.
    pub fn diameter(&self) -> Option<f64> {
        (self.kappa > 0.0).then(|| PI / self.kappa.sqrt())
    }

    fn quad_spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    fn check_radius(&self, r: f64) -> Result<()> {
        if !(r >= 0.0 && r.is_finite()) {
            return Err(Error::domain(format!(
                "radius must be non-negative, got {r}"
            )));
        }
        if let Some(d) = self.diameter() {
            if r > d * (1.0 + 1e-12) {
                return Err(Error::domain(format!(
                    "radius {r} exceeds the diameter {d} of the space form"
                )));
            }
        }
        Ok(())
    }

    /// Volume of the geodesic ball of radius `r`:
    /// omega_{n-1} * int_0^r s_kappa(t)^(n-1) dt.
    pub fn ball_volume(&self, r: f64) -> Result<f64> {
        self.check_radius(r)?;
        let (n, kappa) = (self.n, self.kappa);
        let top = self.diameter().map_or(r, |d| r.min(d));
        integrate(
            |t| sk(kappa, t).powi(n as i32 - 1),
            0.0,
            top,
            &Self::quad_spec(),
        )
        .map(|v| v * unit_sphere_area(n))
    }

    /// Boundary area of the geodesic ball of radius `r`:
    /// omega_{n-1} * s_kappa(r)^(n-1). This is d(ball_volume)/dr.
    pub fn ball_area(&self, r: f64) -> Result<f64> {
        self.check_radius(r)?;
        Ok(unit_sphere_area(self.n) * sk(self.kappa, r).powi(self.n as i32 - 1))
    }

    /// Total volume, finite only for positive curvature.
    pub fn total_volume(&self) -> Result<f64> {
        let d = self
            .diameter()
            .ok_or_else(|| Error::domain("total volume is infinite for non-positive curvature"))?;
        self.ball_volume(d)
    }

    /// Invert the monotone map r -> ball_volume(r).
    pub fn radius_for_volume(&self, v: f64) -> Result<f64> {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::domain(format!("volume must be positive, got {v}")));
        }
        let hi = match self.diameter() {
            Some(d) => {
                if v > self.total_volume()? * (1.0 + 1e-12) {
                    return Err(Error::domain(format!(
                        "volume {v} exceeds the total volume of the space form"
                    )));
                }
                d
            }
            None => {
                let mut hi = 1.0;
                let mut guard = 0;
                while self.ball_volume(hi)? < v {
                    hi *= 2.0;
                    guard += 1;
                    if guard > 64 {
                        return Err(Error::domain("volume bracket growth failed"));
                    }
                }
                hi
            }
        };
        let spec = RootSpec::new(0.0, hi).with_tolerance(1e-14 * hi.max(1.0));
        find_root(|r| self.ball_volume(r).unwrap_or(f64::NAN) - v, &spec)
    }

    /// Normalized profile evaluation at volume fraction `beta`:
    /// psi = |dB(r)| / |M| with |B(r)| = beta |M|, together with
    ///
    /// psi'  = (n-1) c_kappa(r) / s_kappa(r)
    /// psi'' = -(n-1) |M| / (omega_{n-1} s_kappa(r)^(n+1))
    ///
    /// both obtained by differentiating through dr/dbeta = |M| / area.
    ///
    /// ```
    /// use isoprofile::SpaceForm;
    /// // The equator halves the unit two-sphere: psi = 2 pi / 4 pi.
    /// let equator = SpaceForm::new(2, 1.0)?.profile_h1(0.5)?;
    /// assert!((equator.value - 0.5).abs() < 1e-10);
    /// assert!(equator.slope.abs() < 1e-10);
    /// # Ok::<(), isoprofile::Error>(())
    /// ```
    pub fn profile_h1(&self, beta: f64) -> Result<ProfileEval> {
        if self.kappa <= 0.0 {
            return Err(Error::domain(
                "the normalized profile needs finite total volume (kappa > 0)",
            ));
        }
        if !(beta > 0.0 && beta < 1.0) {
            return Err(Error::domain(format!(
                "volume fraction must lie in (0, 1), got {beta}"
            )));
        }
        let total = self.total_volume()?;
        self.h1_eval_with_total(beta, total)
    }

    fn h1_eval_with_total(&self, beta: f64, total: f64) -> Result<ProfileEval> {
        let r = self.radius_for_volume(beta * total)?;
        let s = sk(self.kappa, r);
        let nm1 = (self.n - 1) as f64;
        Ok(ProfileEval {
            value: unit_sphere_area(self.n) * s.powi(self.n as i32 - 1) / total,
            slope: nm1 * ck(self.kappa, r) / s,
            curvature: -nm1 * total / (unit_sphere_area(self.n) * s.powi(self.n as i32 + 1)),
        })
    }

    /// Absolute profile evaluation at enclosed volume `v`: the boundary
    /// area of the geodesic ball of volume `v`, with derivatives through
    /// dv/dr = area. In flat space this is the closed form
    /// n sigma_n^(1/n) v^((n-1)/n).
    pub fn profile_h2(&self, v: f64) -> Result<ProfileEval> {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::domain(format!(
                "enclosed volume must be positive, got {v}"
            )));
        }
        if self.kappa > 0.0 && v >= self.total_volume()? {
            return Err(Error::domain(format!(
                "enclosed volume {v} is not below the total volume"
            )));
        }
        let n = self.n as f64;
        if self.kappa == 0.0 {
            let sigma = unit_ball_volume(self.n);
            let r = (v / sigma).powf(1.0 / n);
            let value = n * sigma.powf(1.0 / n) * v.powf((n - 1.0) / n);
            return Ok(ProfileEval {
                value,
                slope: (n - 1.0) / r,
                curvature: -(n - 1.0) / (r * r * value),
            });
        }
        let r = self.radius_for_volume(v)?;
        let s = sk(self.kappa, r);
        let value = unit_sphere_area(self.n) * s.powi(self.n as i32 - 1);
        Ok(ProfileEval {
            value,
            slope: (n - 1.0) * ck(self.kappa, r) / s,
            curvature: -(n - 1.0) / (s * s * value),
        })
    }

    /// The normalized profile as a closed-form [`Profile`] on (0, 1).
    pub fn h1_profile(&self) -> Result<Profile> {
        let sf = *self;
        let total = self.total_volume()?;
        Ok(Profile::closed_form(
            self.n,
            Normalization::Fraction,
            (0.0, 1.0),
            move |beta| sf.h1_eval_with_total(beta, total),
        ))
    }

    /// The absolute profile as a closed-form [`Profile`] on
    /// (0, |M|) for kappa > 0 and (0, infinity) otherwise.
    pub fn h2_profile(&self) -> Result<Profile> {
        let sf = *self;
        let hi = if self.kappa > 0.0 {
            self.total_volume()?
        } else {
            f64::INFINITY
        };
        Ok(Profile::closed_form(
            self.n,
            Normalization::Absolute,
            (0.0, hi),
            move |v| sf.profile_h2(v),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::fd_derivatives;
    use crate::profile::cosine_grid;
    use std::f64::consts::FRAC_PI_3;

    #[test]
    fn generalized_trig_three_cases() {
        assert_eq!(sk(0.0, 2.5), 2.5);
        assert!((sk(1.0, PI / 2.0) - 1.0).abs() < 1e-15);
        assert!(ck(1.0, PI / 2.0).abs() < 1e-15);
        assert!((sk(-1.0, 1.0) - 1.0f64.sinh()).abs() < 1e-15);
        assert!((1.0f64.sinh() - 1.175_201_193_643_801_4).abs() < 1e-12);
    }

    #[test]
    fn generalized_trig_continuous_at_zero_curvature() {
        for t in [0.3, 1.0, 2.0] {
            assert!((sk(1e-14, t) - t).abs() < 1e-12);
            assert!((sk(-1e-14, t) - t).abs() < 1e-12);
            assert!((ck(1e-14, t) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn generalized_pythagoras() {
        for kappa in [-2.0, -1.0, 0.0, 0.5, 1.0] {
            for t in [0.1, 0.7, 1.9] {
                let s = sk(kappa, t);
                let c = ck(kappa, t);
                assert!((c * c + kappa * s * s - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn unit_ball_volumes() {
        assert!((unit_ball_volume(2) - PI).abs() < 1e-15);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-14);
        assert!((unit_ball_volume(4) - PI * PI / 2.0).abs() < 1e-14);
        assert!((unit_sphere_area(3) - 4.0 * PI).abs() < 1e-14);
    }

    #[test]
    fn hemisphere_of_unit_two_sphere() {
        let sf = SpaceForm::new(2, 1.0).unwrap();
        assert!((sf.ball_volume(PI / 2.0).unwrap() - 2.0 * PI).abs() < 1e-10);
        assert!((sf.ball_area(PI / 2.0).unwrap() - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn flat_unit_ball() {
        let sf = SpaceForm::new(3, 0.0).unwrap();
        assert!((sf.ball_volume(1.0).unwrap() - 4.0 * PI / 3.0).abs() < 1e-11);
    }

    #[test]
    fn hyperbolic_disk() {
        let sf = SpaceForm::new(2, -1.0).unwrap();
        let v = sf.ball_volume(1.0).unwrap();
        let a = sf.ball_area(1.0).unwrap();
        assert!((v - 2.0 * PI * (1.0f64.cosh() - 1.0)).abs() < 1e-10);
        assert!((a - 2.0 * PI * 1.0f64.sinh()).abs() < 1e-12);
    }

    #[test]
    fn volume_derivative_is_area() {
        let sf = SpaceForm::new(3, 1.0).unwrap();
        let h = 1e-6;
        for r in [0.4, 1.0, 2.2] {
            let dv = (sf.ball_volume(r + h).unwrap() - sf.ball_volume(r - h).unwrap()) / (2.0 * h);
            assert!((dv - sf.ball_area(r).unwrap()).abs() < 1e-7);
        }
    }

    #[test]
    fn equator_of_unit_two_sphere() {
        let sf = SpaceForm::new(2, 1.0).unwrap();
        let e = sf.profile_h1(0.5).unwrap();
        assert!((e.value - 0.5).abs() < 1e-12);
        assert!(e.slope.abs() < 1e-10);
        assert!((e.curvature + 2.0).abs() < 1e-9);
    }

    #[test]
    fn quarter_volume_cap_of_unit_two_sphere() {
        // beta = (1 - cos r)/2 = 1/4 at r = pi/3; psi = sin(r)/2.
        let sf = SpaceForm::new(2, 1.0).unwrap();
        let e = sf.profile_h1(0.25).unwrap();
        assert!((e.value - FRAC_PI_3.sin() / 2.0).abs() < 1e-12);
        assert!((e.value - 0.433_013).abs() < 1e-6);
        assert!((e.slope - 1.0 / FRAC_PI_3.tan()).abs() < 1e-10);
        assert!((e.slope - 0.577_350).abs() < 1e-6);
    }

    #[test]
    fn profile_symmetry_under_complement() {
        for n in [2, 3, 4] {
            let sf = SpaceForm::new(n, 1.0).unwrap();
            for beta in cosine_grid(33) {
                let a = sf.profile_h1(beta).unwrap().value;
                let b = sf.profile_h1(1.0 - beta).unwrap().value;
                assert!((a - b).abs() <= 1e-10, "n={n} beta={beta}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn first_variation_identity_matches_finite_differences() {
        // psi'(beta) = (n-1) c/s checked against the sampled profile;
        // the grid is dense enough that the stencil error stays below
        // 1e-6 away from the endpoint singularities of psi'''.
        let sf = SpaceForm::new(2, 1.0).unwrap();
        let count = 4001;
        let grid: Vec<f64> = (1..=count).map(|j| j as f64 / (count + 1) as f64).collect();
        let values: Vec<f64> = grid
            .iter()
            .map(|&b| sf.profile_h1(b).unwrap().value)
            .collect();
        for i in (800..=3200).step_by(200) {
            let (d1, _) = fd_derivatives(&grid, &values, i).unwrap();
            let exact = sf.profile_h1(grid[i]).unwrap().slope;
            assert!(
                (d1 - exact).abs() < 1e-6,
                "beta={}: {d1} vs {exact}",
                grid[i]
            );
        }
    }

    #[test]
    fn sampled_unit_sphere_profile_center_derivatives() {
        let sf = SpaceForm::new(2, 1.0).unwrap();
        let grid: Vec<f64> = (1..=1001).map(|j| j as f64 / 1002.0).collect();
        let values: Vec<f64> = grid
            .iter()
            .map(|&b| sf.profile_h1(b).unwrap().value)
            .collect();
        let (d1, d2) = fd_derivatives(&grid, &values, 500).unwrap();
        assert!(d1.abs() < 1e-4);
        assert!((d2 + 2.0).abs() < 1e-4);
    }

    #[test]
    fn flat_absolute_profile_unit_disk() {
        let sf = SpaceForm::new(2, 0.0).unwrap();
        let e = sf.profile_h2(PI).unwrap();
        assert!((e.value - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn hyperbolic_absolute_profile_closed_form() {
        // Eliminating r from area/perimeter gives h2(A) = sqrt(A^2 + 4 pi A).
        let sf = SpaceForm::new(2, -1.0).unwrap();
        let a = 2.0 * PI * (1.0f64.cosh() - 1.0);
        let e = sf.profile_h2(a).unwrap();
        assert!((e.value - (a * a + 4.0 * PI * a).sqrt()).abs() < 1e-9);
        assert!((e.value - 2.0 * PI * 1.0f64.sinh()).abs() < 1e-9);
    }

    #[test]
    fn hemisphere_absolute_profile() {
        let sf = SpaceForm::new(2, 1.0).unwrap();
        let e = sf.profile_h2(2.0 * PI).unwrap();
        assert!((e.value - 2.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn absolute_profile_rescales_the_normalized_one() {
        // h2(v) = |M| h1(v / |M|) on finite-volume space forms.
        let sf = SpaceForm::new(3, 1.0).unwrap();
        let total = sf.total_volume().unwrap();
        for frac in [0.05, 0.3, 0.5, 0.77] {
            let h2 = sf.profile_h2(frac * total).unwrap().value;
            let h1 = sf.profile_h1(frac).unwrap().value;
            assert!((h2 - total * h1).abs() < 1e-9 * h2, "frac={frac}");
        }
    }

    #[test]
    fn asymptotic_constants() {
        assert!((asymptotic_constant(2, 4.0 * PI).unwrap() - 1.0).abs() < 1e-14);
        let expected = 3.0 * (2.0 / (3.0 * PI)).powf(1.0 / 3.0);
        assert!((asymptotic_constant(3, 2.0 * PI * PI).unwrap() - expected).abs() < 1e-12);
        assert!((expected - 1.7894).abs() < 1e-4);
        assert!((asymptotic_constant(2, 1.0).unwrap() - 2.0 * PI.sqrt()).abs() < 1e-14);
        assert!((2.0 * PI.sqrt() - 3.544_908).abs() < 1e-6);
    }

    #[test]
    fn small_volume_asymptotics_of_h1() {
        for n in [2, 3, 4] {
            let sf = SpaceForm::new(n, 1.0).unwrap();
            let total = sf.total_volume().unwrap();
            let constant = asymptotic_constant(n, total).unwrap();
            let beta = 1e-6;
            let psi = sf.profile_h1(beta).unwrap().value;
            let ratio = psi / beta.powf((n as f64 - 1.0) / n as f64);
            assert!(
                (ratio - constant).abs() / constant < 0.01,
                "n={n}: {ratio} vs {constant}"
            );
        }
    }

    #[test]
    fn scaled_sphere_profile_matches_radius_two_sphere() {
        // Scaling the unit-sphere metric by c = 4 gives the radius-2
        // sphere; at half volume 8 pi the boundary is a great circle of
        // length 4 pi.
        let sf = SpaceForm::new(2, 1.0).unwrap();
        let p = sf.h2_profile().unwrap().scaled(4.0).unwrap();
        let e = p.eval(8.0 * PI).unwrap();
        assert!((e.value - 4.0 * PI).abs() < 1e-9);
        let identity = sf.h2_profile().unwrap().scaled(1.0).unwrap();
        let a = identity.eval(2.0 * PI).unwrap().value;
        assert!((a - 2.0 * PI).abs() < 1e-9);
    }
}
