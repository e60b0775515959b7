//! Angle-growth regions of Σ and the numbers that bound the largest angle
//! along an orbit.
//!
//! `Ω1` is the union of the circles `C1, C2, C3` with the geodesic cones
//! traced from the exceptional equilateral-orbit points towards their
//! nearest circle. `Ω2` is the part of Σ lying under the circles. Inside
//! `Ω1` the largest angle grows by at most [`theorem1_constant`]; inside
//! `Ω2` by less than [`THEOREM2_BOUND`], the maximum of the quotient curve
//! built by [`quotient_curve`].

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::Complex64;
use crate::error::{Error, Result};
use crate::geometry::{angles, NormalizedTriangle};
use crate::hyperbolic::{
    distance, geodesic_through, tangents_from, HalfPlanePoint, HyperbolicCircle, Tangent,
};
use crate::landmarks::{circle_radius, circles, gamma_eq_exceptional, omega};
use crate::orbit::{angle_stats, OrbitSet};

/// Slack on region boundaries and on angle bounds.
pub const REGION_TOL: f64 = 1e-9;

/// Published upper bound on the largest-angle growth factor inside `Ω2`.
pub const THEOREM2_BOUND: f64 = 2.1652;

/// Default quotient-curve grid start and spacing.
pub const DEFAULT_T_MIN: f64 = 1e-4;
pub const DEFAULT_T_STEP: f64 = 1e-4;

/// Largest angle over the equilateral orbit: `arccos(-5 / (2√7))`.
pub fn max_equilateral_orbit_angle() -> f64 {
    (-5.0 / (2.0 * 7f64.sqrt())).acos()
}

/// Smallest angle over the equilateral orbit: `arctan(√3 / 11)`.
pub fn min_equilateral_orbit_angle() -> f64 {
    (3f64.sqrt() / 11.0).atan()
}

/// `arccos(-5 / (2√7)) / (π/3) ≈ 2.6816`.
pub fn theorem1_constant() -> f64 {
    max_equilateral_orbit_angle() / (PI / 3.0)
}

/// Upper end of the quotient-curve parameter range, `arcsin(3/5)`.
pub fn t_max() -> f64 {
    (3.0f64 / 5.0).asin()
}

/// Smallest hyperbolic distance from `z` to `ω1, ω2, ω3`.
pub fn omega_radius(z: NormalizedTriangle) -> f64 {
    omega()
        .iter()
        .map(|&w| distance(z.z(), w))
        .fold(f64::INFINITY, f64::min)
}

/// Point where `C1` touches the arc `|z - 1| = 1` from inside.
fn c1_contact_with_sigma_arc() -> Complex64 {
    let e = circles()[0].to_euclidean();
    let one = Complex64::new(1.0, 0.0);
    let v = e.center - one;
    one + v / v.norm()
}

/// Membership in `Ω2`, the part of Σ under the circles.
///
/// `z` must be outside the open circles and either see one of the circles'
/// disks straight above it, or lie left of where `C1` touches the boundary
/// arc `|z - 1| = 1`. Left of that contact point nothing separates `z` from
/// the real axis, so those points count as under the circles as well.
pub fn omega2_membership(z: NormalizedTriangle) -> bool {
    if omega_radius(z) < circle_radius() - REGION_TOL {
        return false;
    }
    if z.re() <= c1_contact_with_sigma_arc().re + 1e-12 {
        return true;
    }
    circles().iter().any(|c| {
        let e = c.to_euclidean();
        let dx = z.re() - e.center.re;
        dx.abs() <= e.radius && z.im() <= e.center.im + (e.radius * e.radius - dx * dx).sqrt()
    })
}

/// Geodesic cone from an exceptional orbit point to its nearest circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cone {
    pub apex: Complex64,
    /// Index into `C1, C2, C3`.
    pub circle: usize,
    pub tangents: [Tangent; 2],
}

impl Cone {
    pub fn new(apex: HalfPlanePoint, circle: usize) -> Result<Self> {
        let c = circles()[circle];
        let (a, b) = tangents_from(apex, &c)?;
        Ok(Self {
            apex: apex.value(),
            circle,
            tangents: [a, b],
        })
    }

    fn hyperbolic_circle(&self) -> HyperbolicCircle {
        circles()[self.circle]
    }

    /// True for the apex, points of the closed disk, and points on a
    /// geodesic ray from the apex that still has the disk ahead of it.
    /// The ray family is exactly the region between the two tangents.
    pub fn contains(&self, z: Complex64) -> bool {
        let disk = self.hyperbolic_circle().to_euclidean();
        if disk.contains(z, REGION_TOL) || (z - self.apex).norm() <= REGION_TOL {
            return true;
        }
        let (Ok(p), Ok(q)) = (HalfPlanePoint::new(self.apex), HalfPlanePoint::new(z)) else {
            return false;
        };
        let Ok(g) = geodesic_through(p, q) else {
            return true;
        };
        let u_apex = g.arclength_coord(self.apex);
        let u_z = g.arclength_coord(z) - u_apex;
        let dir = u_z.signum();
        g.intersect_circle(&disk)
            .into_iter()
            .map(|w| dir * (g.arclength_coord(w) - u_apex))
            .any(|s| s >= dir * u_z - REGION_TOL)
    }
}

/// Cones of `Ω1`: one per exceptional equilateral-orbit point, aimed at the
/// hyperbolically nearest circle.
pub fn omega1_cones() -> &'static [Cone] {
    static CONES: OnceLock<Vec<Cone>> = OnceLock::new();
    CONES.get_or_init(|| {
        let rho = circle_radius();
        gamma_eq_exceptional()
            .into_iter()
            .filter_map(|p| {
                let (idx, d) = omega()
                    .iter()
                    .enumerate()
                    .map(|(i, &w)| (i, distance(p, w)))
                    .min_by(|a, b| a.1.total_cmp(&b.1))?;
                if d <= rho {
                    return None;
                }
                Cone::new(HalfPlanePoint::new(p).ok()?, idx).ok()
            })
            .collect()
    })
}

/// Membership in `Ω1`: inside a circle or inside one of [`omega1_cones`].
/// Cone edges are an approximation of the region's boundary.
pub fn omega1_membership(z: NormalizedTriangle) -> bool {
    omega_radius(z) <= circle_radius() + REGION_TOL
        || omega1_cones().iter().any(|c| c.contains(z.z()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionLabel {
    pub in_omega1: bool,
    pub in_omega2: bool,
}

pub fn classify(z: NormalizedTriangle) -> RegionLabel {
    RegionLabel {
        in_omega1: omega1_membership(z),
        in_omega2: omega2_membership(z),
    }
}

fn check_t(t: f64) -> Result<()> {
    if t > 0.0 && t <= t_max() + 1e-15 {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name: "t",
            value: t,
            expected: "0 < t <= arcsin(3/5)",
        })
    }
}

/// Point `1 - cos t + i sin t` on the arc `|z - 1| = 1` and its largest
/// angle `π/2 - t/2` (the triangle is isosceles with two unit sides).
pub fn gamma_of_t(t: f64) -> Result<(NormalizedTriangle, f64)> {
    check_t(t)?;
    let z = NormalizedTriangle::from_parts(1.0 - t.cos(), t.sin())?;
    Ok((z, FRAC_PI_2 - 0.5 * t))
}

/// Largest angle at the lowest point `1/2 + (√2/9) e^{-r} i` of the level
/// curve at hyperbolic radius `r`: `π - 2 arctan(2 (√2/9) e^{-r})`.
pub fn gamma_hat_of_r(r: f64) -> Result<f64> {
    if r.is_nan() || r < circle_radius() - REGION_TOL {
        return Err(Error::OutOfRange {
            name: "r",
            value: r,
            expected: "r >= ln(sqrt 2)",
        });
    }
    let im = 2f64.sqrt() / 9.0 * (-r).exp();
    Ok(match NormalizedTriangle::from_parts(0.5, im) {
        Ok(z) => angles(z).gamma,
        // e^{-r} underflowed: the sliver limit
        Err(_) => PI - 2.0 * (2.0 * im).atan(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuotientCurveSample {
    pub t: f64,
    pub z_gamma: NormalizedTriangle,
    pub r: f64,
    pub gamma: f64,
    pub gamma_hat: f64,
    pub ratio: f64,
}

/// One point of the quotient curve; `r` is the distance to `ω1`.
pub fn quotient_sample(t: f64) -> Result<QuotientCurveSample> {
    let (z_gamma, gamma) = gamma_of_t(t)?;
    let r = distance(z_gamma.z(), omega()[0]);
    let gamma_hat = gamma_hat_of_r(r)?;
    Ok(QuotientCurveSample {
        t,
        z_gamma,
        r,
        gamma,
        gamma_hat,
        ratio: gamma_hat / gamma,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuotientCurve {
    pub samples: Vec<QuotientCurveSample>,
    pub argmax_t: f64,
    pub max_ratio: f64,
}

impl QuotientCurve {
    /// Ratios never decrease from one grid point to the next.
    pub fn is_monotone_non_decreasing(&self) -> bool {
        self.samples.windows(2).all(|w| w[1].ratio >= w[0].ratio)
    }
}

/// Grid `t_min, t_min + step, ...` up to `t_max`, closed at `t_max`.
pub fn t_grid(t_min: f64, t_max_: f64, step: f64) -> Result<Vec<f64>> {
    if !(t_min > 0.0 && t_min < t_max_ && t_max_ <= t_max() + 1e-15 && step > 0.0) {
        return Err(Error::Config(
            "need 0 < t_min < t_max <= arcsin(3/5) and step > 0",
        ));
    }
    let n = ((t_max_ - t_min) / step + 1e-9).floor() as usize;
    let mut grid: Vec<f64> = (0..=n).map(|i| t_min + i as f64 * step).collect();
    let last = *grid.last().expect("non-empty");
    if t_max_ - last > 1e-12 * step.max(1.0) {
        grid.push(t_max_);
    } else if let Some(l) = grid.last_mut() {
        *l = l.min(t_max_);
    }
    Ok(grid)
}

/// Samples `γ̂(t) / γ(t)` over a `t` grid and reports the maximum.
/// Grid points are evaluated in parallel and assembled in `t` order.
pub fn quotient_curve(t_min: f64, t_max_: f64, step: f64) -> Result<QuotientCurve> {
    let grid = t_grid(t_min, t_max_, step)?;
    let samples = grid
        .par_iter()
        .map(|&t| quotient_sample(t))
        .collect::<Result<Vec<_>>>()?;
    let best = samples
        .iter()
        .fold(&samples[0], |b, s| if s.ratio > b.ratio { s } else { b });
    Ok(QuotientCurve {
        argmax_t: best.t,
        max_ratio: best.ratio,
        samples,
    })
}

/// Quotient curve on `[1e-4, arcsin(3/5)]` with step `1e-4`.
pub fn default_quotient_curve() -> Result<QuotientCurve> {
    quotient_curve(DEFAULT_T_MIN, t_max(), DEFAULT_T_STEP)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleViolation {
    pub z: NormalizedTriangle,
    pub angle: f64,
    pub bound: f64,
    pub below_lower: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub seed: NormalizedTriangle,
    pub lower: f64,
    pub upper: f64,
    pub pass: bool,
    /// Upper bound exceeds π, so it holds for every triangle.
    pub vacuous_upper: bool,
    pub min_angle: f64,
    pub min_witness: NormalizedTriangle,
    pub max_angle: f64,
    pub max_witness: NormalizedTriangle,
    pub orbit_size: usize,
    pub violation: Option<AngleViolation>,
}

/// Checks every angle of every orbit triangle against `[lower, upper]`
/// with slack [`REGION_TOL`].
pub fn bound_check(
    seed: NormalizedTriangle,
    orbit: &OrbitSet,
    lower: f64,
    upper: f64,
) -> Result<BoundReport> {
    let stats = angle_stats(orbit)?;
    let violation = if stats.min_angle < lower - REGION_TOL {
        Some(AngleViolation {
            z: stats.argmin,
            angle: stats.min_angle,
            bound: lower,
            below_lower: true,
        })
    } else if stats.max_angle > upper + REGION_TOL {
        Some(AngleViolation {
            z: stats.argmax,
            angle: stats.max_angle,
            bound: upper,
            below_lower: false,
        })
    } else {
        None
    };
    Ok(BoundReport {
        seed,
        lower,
        upper,
        pass: violation.is_none(),
        vacuous_upper: upper > PI,
        min_angle: stats.min_angle,
        min_witness: stats.argmin,
        max_angle: stats.max_angle,
        max_witness: stats.argmax,
        orbit_size: orbit.len(),
        violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::landmarks::{extremal_orbit_point, z_eq};
    use crate::orbit::exhaustive_orbit;

    fn nt(re: f64, im: f64) -> NormalizedTriangle {
        NormalizedTriangle::from_parts(re, im).unwrap()
    }

    #[test]
    fn theorem1_constant_value() {
        let c = theorem1_constant();
        assert!(c > 2.6815 && c < 2.6817, "{c}");
        let num = angles(NormalizedTriangle::new(extremal_orbit_point()).unwrap()).gamma;
        assert!((num - max_equilateral_orbit_angle()).abs() < 1e-12);
        let den = angles(NormalizedTriangle::new(z_eq()).unwrap()).gamma;
        assert!((den - PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn omega_radius_examples() {
        let w = omega();
        assert_eq!(omega_radius(NormalizedTriangle::new(w[1]).unwrap()), 0.0);
        // 1/5 + 3/5 i lies on C1: cosh d = 3 / (2√2)
        let on_c1 = omega_radius(nt(0.2, 0.6));
        assert!((on_c1 - circle_radius()).abs() < 1e-12);
        assert!((on_c1 - (3.0 / (2.0 * 2f64.sqrt())).acosh()).abs() < 1e-12);
        let zeq = NormalizedTriangle::new(z_eq()).unwrap();
        let d: Vec<f64> = w.iter().map(|&x| distance(z_eq(), x)).collect();
        assert!(d[0] < d[1] && d[0] < d[2]);
        assert_eq!(omega_radius(zeq), d[0]);
    }

    #[test]
    fn omega2_examples() {
        let below = nt(0.5, 2f64.sqrt() / 9.0 * (-1f64).exp());
        assert!(omega2_membership(below));
        assert!(!omega2_membership(
            NormalizedTriangle::new(omega()[0]).unwrap()
        ));
        assert!(!omega2_membership(NormalizedTriangle::new(z_eq()).unwrap()));
        // near the real axis, left of every circle
        assert!(omega2_membership(nt(0.05, 0.05)));
    }

    #[test]
    fn contact_point_of_c1() {
        let t = c1_contact_with_sigma_arc();
        assert!((t - Complex64::new(0.2, 0.6)).norm() < 1e-15);
    }

    #[test]
    fn omega1_examples() {
        assert!(omega1_membership(
            NormalizedTriangle::new(omega()[2]).unwrap()
        ));
        assert!(omega1_membership(NormalizedTriangle::new(z_eq()).unwrap()));
        // far down in the corner near 0 is in neither cone nor circle
        assert!(!omega1_membership(nt(0.02, 0.01)));
    }

    #[test]
    fn cones_cover_their_axis_and_not_the_shadow() {
        for cone in omega1_cones() {
            let centre = circles()[cone.circle].to_euclidean().center;
            // midway between apex and the disk along the connecting geodesic
            let g = geodesic_through(
                HalfPlanePoint::new(cone.apex).unwrap(),
                HalfPlanePoint::new(centre).unwrap(),
            )
            .unwrap();
            let (ua, uc) = (g.arclength_coord(cone.apex), g.arclength_coord(centre));
            let mid = g.point_at(ua + 0.3 * (uc - ua));
            assert!(cone.contains(mid), "{:?}", cone.apex);
            // beyond the disk along the same geodesic
            let shadow = g.point_at(uc + 3.0 * (uc - ua));
            assert!(!cone.contains(shadow), "{:?}", cone.apex);
            // behind the apex
            let behind = g.point_at(ua - 0.5 * (uc - ua));
            assert!(!cone.contains(behind));
        }
    }

    #[test]
    fn there_are_ten_cones() {
        // all ten exceptional points are outside the circles
        assert_eq!(omega1_cones().len(), 10);
    }

    #[test]
    fn gamma_of_t_examples() {
        let (z, g) = gamma_of_t(t_max()).unwrap();
        assert!((z.z() - Complex64::new(0.2, 0.6)).norm() < 1e-15);
        assert!((g - (FRAC_PI_2 - t_max() / 2.0)).abs() < 1e-15);
        assert!((g - 1.24905).abs() < 1e-5);
        let (z, g) = gamma_of_t(1e-6).unwrap();
        assert!(z.z().norm() < 2e-6);
        assert!((g - FRAC_PI_2).abs() < 1e-6);
        assert!(gamma_of_t(0.0).is_err());
        assert!(gamma_of_t(0.7).is_err());
    }

    #[test]
    fn gamma_hat_examples() {
        let g = gamma_hat_of_r(circle_radius()).unwrap();
        assert!((g - (PI - 2.0 * (2.0f64 / 9.0).atan())).abs() < 1e-12);
        assert!((g - 2.70426).abs() < 1e-5);
        assert!((gamma_hat_of_r(800.0).unwrap() - PI).abs() < 1e-15);
        assert!(gamma_hat_of_r(0.1).is_err());
        assert!(gamma_hat_of_r(f64::NAN).is_err());
    }

    #[test]
    fn grid_includes_endpoint() {
        let g = t_grid(DEFAULT_T_MIN, t_max(), DEFAULT_T_STEP).unwrap();
        assert_eq!(g.len(), 6436);
        assert_eq!(*g.last().unwrap(), t_max());
        assert!(t_grid(0.0, 0.5, 0.1).is_err());
        assert!(t_grid(0.3, 0.2, 0.1).is_err());
        assert!(t_grid(0.1, 0.5, 0.0).is_err());
    }

    #[test]
    fn bound_check_examples() {
        let seed = NormalizedTriangle::new(z_eq()).unwrap();
        let orbit = exhaustive_orbit(seed, 6).unwrap();
        let lo = min_equilateral_orbit_angle();
        let hi = max_equilateral_orbit_angle();
        let rep = bound_check(seed, &orbit, lo, hi).unwrap();
        assert!(rep.pass && !rep.vacuous_upper);
        // attained at 29/62 + 3√3/62 i (and, tied, at 7/18 + √3/18 i)
        assert!((rep.min_angle - lo).abs() < 1e-9);
        let extremal = NormalizedTriangle::new(extremal_orbit_point()).unwrap();
        assert!(orbit.contains(extremal));
        assert!((angles(extremal).alpha - lo).abs() < 1e-12);
        assert!((rep.max_witness.z() - extremal_orbit_point()).norm() < 1e-9);

        let fail = bound_check(seed, &orbit, lo, FRAC_PI_2).unwrap();
        assert!(!fail.pass);
        let v = fail.violation.unwrap();
        assert!(!v.below_lower && v.angle > FRAC_PI_2);

        assert!(bound_check(seed, &OrbitSet::default(), lo, hi).is_err());
    }
}
