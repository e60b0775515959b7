//! Poincaré half-plane model: `ds² = (dx² + dy²) / y²`.
//!
//! Geodesics are vertical lines or half-circles centred on the real axis.
//! Hyperbolic circles are Euclidean circles with a shifted centre, which is
//! what makes tangency questions tractable in Euclidean terms.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::complex::{format_complex, Complex64};
use crate::error::{Error, Result};
use crate::geometry::NormalizedTriangle;

/// `|Δ re|` below which two points are taken to share a vertical geodesic.
pub const VERTICAL_TOL: f64 = 1e-12;

/// Point of the open upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfPlanePoint(Complex64);

impl HalfPlanePoint {
    pub fn new(z: Complex64) -> Result<Self> {
        if z.re.is_finite() && z.im.is_finite() && z.im > 0.0 {
            Ok(Self(z))
        } else {
            Err(Error::NotInHalfPlane(format_complex(z)))
        }
    }

    #[inline]
    pub fn value(self) -> Complex64 {
        self.0
    }
}

impl From<NormalizedTriangle> for HalfPlanePoint {
    fn from(t: NormalizedTriangle) -> Self {
        Self(t.z())
    }
}

/// Hyperbolic distance between two upper half-plane points.
///
/// Evaluates `cosh d = 1 + |z1 - z2|² / (2 y1 y2)` through the equivalent
/// half-angle form `sinh(d/2) = |z1 - z2| / (2 sqrt(y1 y2))`, which keeps
/// full relative precision for nearby points.
pub fn hyp_distance(z1: HalfPlanePoint, z2: HalfPlanePoint) -> f64 {
    distance(z1.0, z2.0)
}

#[inline]
pub(crate) fn distance(a: Complex64, b: Complex64) -> f64 {
    let s = (a - b).norm() / (2.0 * (a.im * b.im).sqrt());
    2.0 * s.asinh()
}

/// Hyperbolic distance via `arcosh`, with the argument clamped to `>= 1`.
pub fn hyp_distance_arcosh(z1: HalfPlanePoint, z2: HalfPlanePoint) -> f64 {
    let (a, b) = (z1.0, z2.0);
    let arg = 1.0 + (a - b).norm_sqr() / (2.0 * a.im * b.im);
    arg.max(1.0).acosh()
}

/// Circle in the plane, Euclidean centre and radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EuclideanCircle {
    pub center: Complex64,
    pub radius: f64,
}

impl EuclideanCircle {
    /// Signed distance from `z` to the circle, negative inside.
    pub fn signed_distance(&self, z: Complex64) -> f64 {
        (z - self.center).norm() - self.radius
    }

    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        self.signed_distance(z) <= tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperbolicCircle {
    pub center: HalfPlanePoint,
    pub radius: f64,
}

impl HyperbolicCircle {
    pub fn new(center: HalfPlanePoint, radius: f64) -> Result<Self> {
        if radius.is_finite() && radius > 0.0 {
            Ok(Self { center, radius })
        } else {
            Err(Error::OutOfRange {
                name: "radius",
                value: radius,
                expected: "finite and > 0",
            })
        }
    }

    pub fn to_euclidean(&self) -> EuclideanCircle {
        circle_to_euclidean(self)
    }

    /// Point at hyperbolic distance `radius` in the Euclidean direction `angle`.
    pub fn boundary_point(&self, angle: f64) -> Complex64 {
        let e = self.to_euclidean();
        e.center + Complex64::from_polar(e.radius, angle)
    }
}

/// Euclidean form of a hyperbolic circle: centre `x0 + i y0 cosh ρ`,
/// radius `y0 sinh ρ`.
pub fn circle_to_euclidean(c: &HyperbolicCircle) -> EuclideanCircle {
    let z = c.center.0;
    EuclideanCircle {
        center: Complex64::new(z.re, z.im * c.radius.cosh()),
        radius: z.im * c.radius.sinh(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Geodesic {
    VerticalLine { x: f64 },
    HalfCircle { center: f64, radius: f64 },
}

impl Geodesic {
    /// Coordinate along the geodesic that measures hyperbolic arclength.
    ///
    /// `ln y` on a vertical line, `ln tan(φ/2)` on a half-circle where `φ`
    /// is the polar angle about the centre. Increases upward on vertical
    /// lines and from right to left on half-circles.
    pub fn arclength_coord(&self, z: Complex64) -> f64 {
        match *self {
            Geodesic::VerticalLine { .. } => z.im.ln(),
            Geodesic::HalfCircle { center, .. } => {
                let phi = z.im.atan2(z.re - center);
                (phi / 2.0).tan().ln()
            }
        }
    }

    /// Inverse of [`Geodesic::arclength_coord`].
    pub fn point_at(&self, u: f64) -> Complex64 {
        match *self {
            Geodesic::VerticalLine { x } => Complex64::new(x, u.exp()),
            Geodesic::HalfCircle { center, radius } => {
                let phi = 2.0 * u.exp().atan();
                Complex64::new(center, 0.0) + Complex64::from_polar(radius, phi)
            }
        }
    }

    /// Euclidean distance from `z` to the full curve (line or full circle).
    pub fn euclidean_distance(&self, z: Complex64) -> f64 {
        match *self {
            Geodesic::VerticalLine { x } => (z.re - x).abs(),
            Geodesic::HalfCircle { center, radius } => {
                ((z - Complex64::new(center, 0.0)).norm() - radius).abs()
            }
        }
    }

    /// Nearest point of the curve to `z` (upper half-plane `z`).
    pub fn closest_point(&self, z: Complex64) -> Complex64 {
        match *self {
            Geodesic::VerticalLine { x } => Complex64::new(x, z.im),
            Geodesic::HalfCircle { center, radius } => {
                let c = Complex64::new(center, 0.0);
                let d = z - c;
                c + d * (radius / d.norm())
            }
        }
    }

    /// Intersection points with a Euclidean circle lying in the upper
    /// half-plane. Zero, one (tangent) or two points.
    pub fn intersect_circle(&self, circle: &EuclideanCircle) -> Vec<Complex64> {
        let (x, r) = (circle.center, circle.radius);
        let mut out = Vec::with_capacity(2);
        match *self {
            Geodesic::VerticalLine { x: x0 } => {
                let dx = x0 - x.re;
                let h2 = r * r - dx * dx;
                if h2 >= 0.0 {
                    let h = h2.sqrt();
                    out.push(Complex64::new(x0, x.im - h));
                    if h > 0.0 {
                        out.push(Complex64::new(x0, x.im + h));
                    }
                }
            }
            Geodesic::HalfCircle { center, radius } => {
                let c = Complex64::new(center, 0.0);
                let v = x - c;
                let d = v.norm();
                if d == 0.0 || d > radius + r || d < (radius - r).abs() {
                    return out;
                }
                let a = (radius * radius - r * r + d * d) / (2.0 * d);
                let h = (radius * radius - a * a).max(0.0).sqrt();
                let u = v / d;
                let base = c + u * a;
                let perp = Complex64::new(-u.im, u.re);
                out.push(base + perp * h);
                if h > 0.0 {
                    out.push(base - perp * h);
                }
            }
        }
        out.retain(|z| z.im > 0.0);
        out
    }
}

/// Geodesic through two distinct points.
pub fn geodesic_through(p: HalfPlanePoint, q: HalfPlanePoint) -> Result<Geodesic> {
    let (p, q) = (p.0, q.0);
    if p == q {
        return Err(Error::CoincidentPoints);
    }
    let dx = q.re - p.re;
    if dx.abs() < VERTICAL_TOL {
        return Ok(Geodesic::VerticalLine { x: p.re });
    }
    let center = (q.norm_sqr() - p.norm_sqr()) / (2.0 * dx);
    let radius = (p - center).norm();
    Ok(Geodesic::HalfCircle { center, radius })
}

/// Hyperbolic midpoint of two distinct points.
pub fn geodesic_midpoint(p: HalfPlanePoint, q: HalfPlanePoint) -> Result<HalfPlanePoint> {
    let g = geodesic_through(p, q)?;
    let u = 0.5 * (g.arclength_coord(p.0) + g.arclength_coord(q.0));
    Ok(HalfPlanePoint(g.point_at(u)))
}

/// Ordered points joined by geodesic segments.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    points: Vec<HalfPlanePoint>,
}

impl Polyline {
    pub fn new(points: Vec<HalfPlanePoint>) -> Result<Self> {
        if points.is_empty() || points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::BadPolyline);
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[HalfPlanePoint] {
        &self.points
    }
}

/// Sum of hyperbolic distances between consecutive points.
pub fn polyline_length(p: &Polyline) -> f64 {
    p.points.windows(2).map(|w| hyp_distance(w[0], w[1])).sum()
}

/// A geodesic tangent to a circle, with its point of contact.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tangent {
    pub geodesic: Geodesic,
    pub touch: Complex64,
}

/// The two geodesics through `p` tangent to `c`.
pub fn tangent_geodesics_from(
    p: HalfPlanePoint,
    c: &HyperbolicCircle,
) -> Result<(Geodesic, Geodesic)> {
    let (a, b) = tangents_from(p, c)?;
    Ok((a.geodesic, b.geodesic))
}

/// Like [`tangent_geodesics_from`], also reporting the contact points.
///
/// The pencil of geodesics through `p` is parametrized by the direction
/// angle `θ` of the tangent vector at `p`. The geodesic through the circle's
/// Euclidean centre crosses the disk; stepping `θ` away on either side until
/// the geodesic misses the disk brackets each tangency, which bisection then
/// pins down.
pub fn tangents_from(p: HalfPlanePoint, c: &HyperbolicCircle) -> Result<(Tangent, Tangent)> {
    let d = hyp_distance(p, c.center);
    if d <= c.radius {
        return Err(Error::InsideCircle {
            distance: d,
            radius: c.radius,
        });
    }
    let e = c.to_euclidean();
    let pencil = Pencil { p: p.0, circle: e };

    let through_center = geodesic_through(p, HalfPlanePoint(e.center))?;
    let theta0 = match through_center {
        Geodesic::VerticalLine { .. } => FRAC_PI_2,
        Geodesic::HalfCircle { center, .. } => (p.0.re - center).atan2(-p.0.im),
    };

    let one_side = |sign: f64| -> Result<Tangent> {
        let step = sign * PI / 3600.0;
        let mut inside = theta0;
        let mut outside = None;
        for k in 1..=3600 {
            let theta = theta0 + step * k as f64;
            if pencil.gap(theta) > 0.0 {
                outside = Some(theta);
                break;
            }
            inside = theta;
        }
        let mut outside = outside.ok_or(Error::NoConvergence)?;
        for _ in 0..200 {
            let mid = 0.5 * (inside + outside);
            if mid == inside || mid == outside {
                break;
            }
            if pencil.gap(mid) > 0.0 {
                outside = mid;
            } else {
                inside = mid;
            }
        }
        let geodesic = pencil.geodesic(0.5 * (inside + outside));
        Ok(Tangent {
            geodesic,
            touch: geodesic.closest_point(e.center),
        })
    };

    Ok((one_side(1.0)?, one_side(-1.0)?))
}

/// Geodesics through a fixed point, indexed by direction angle.
struct Pencil {
    p: Complex64,
    circle: EuclideanCircle,
}

impl Pencil {
    /// Euclidean distance from the circle's centre to the geodesic in
    /// direction `theta`, minus the circle radius. Negative when the
    /// geodesic crosses the disk.
    ///
    /// Written in terms of `cos θ`, `sin θ` so that it stays continuous
    /// through the vertical direction.
    fn gap(&self, theta: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        let (p, x) = (self.p, self.circle.center);
        let dx = x.re - p.re;
        let numer = (x.norm_sqr() - p.norm_sqr()) * c - 2.0 * (p.re * c + p.im * s) * dx;
        let denom = Complex64::new(dx * c - p.im * s, x.im * c).norm() + p.im;
        numer.abs() / denom - self.circle.radius
    }

    fn geodesic(&self, theta: f64) -> Geodesic {
        let (s, c) = theta.sin_cos();
        if c.abs() < 1e-12 {
            Geodesic::VerticalLine { x: self.p.re }
        } else {
            Geodesic::HalfCircle {
                center: self.p.re + self.p.im * s / c,
                radius: self.p.im / c.abs(),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::landmarks::{circles, omega, z_eq};

    fn hp(re: f64, im: f64) -> HalfPlanePoint {
        HalfPlanePoint::new(Complex64::new(re, im)).unwrap()
    }

    #[test]
    fn distance_examples() {
        assert!((hyp_distance(hp(0.0, 1.0), hp(0.0, 2.0)) - 2f64.ln()).abs() < 1e-15);
        assert_eq!(hyp_distance(hp(0.3, 0.4), hp(0.3, 0.4)), 0.0);
        let [w1, w2, _] = omega().map(|w| HalfPlanePoint::new(w).unwrap());
        assert!((hyp_distance(w1, w2) - 2f64.ln()).abs() < 1e-14);
        // cosh d = 5/4 for i, 2i
        assert!((hyp_distance_arcosh(hp(0.0, 1.0), hp(0.0, 2.0)) - 1.25f64.acosh()).abs() < 1e-15);
    }

    #[test]
    fn half_angle_form_matches_arcosh() {
        let pts = [hp(0.1, 0.2), hp(0.4, 0.05), hp(-3.0, 7.0), hp(0.5, 0.866)];
        for a in pts {
            for b in pts {
                assert!((hyp_distance(a, b) - hyp_distance_arcosh(a, b)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn half_plane_rejects_real_axis() {
        assert!(HalfPlanePoint::new(Complex64::new(0.2, 0.0)).is_err());
        assert!(HalfPlanePoint::new(Complex64::new(0.2, -1.0)).is_err());
    }

    #[test]
    fn polyline_examples() {
        let one = Polyline::new(vec![hp(0.0, 1.0)]).unwrap();
        assert_eq!(polyline_length(&one), 0.0);
        let two = Polyline::new(vec![hp(0.0, 1.0), hp(0.0, 2.0)]).unwrap();
        assert!((polyline_length(&two) - 2f64.ln()).abs() < 1e-15);
        let three = Polyline::new(vec![hp(0.0, 1.0), hp(0.0, 2.0), hp(0.0, 4.0)]).unwrap();
        assert!((polyline_length(&three) - 4f64.ln()).abs() < 1e-15);
        assert!(Polyline::new(vec![]).is_err());
        assert!(Polyline::new(vec![hp(0.0, 1.0), hp(0.0, 1.0)]).is_err());
    }

    #[test]
    fn circles_in_euclidean_form() {
        let expect = [
            (Complex64::new(1.0 / 3.0, 0.5), 1.0 / 6.0),
            (Complex64::new(1.0 / 3.0, 0.25), 1.0 / 12.0),
            (Complex64::new(4.0 / 9.0, 1.0 / 6.0), 1.0 / 18.0),
        ];
        for (c, (center, radius)) in circles().iter().zip(expect) {
            let e = circle_to_euclidean(c);
            assert!((e.center - center).norm() < 1e-15, "{:?}", e);
            assert!((e.radius - radius).abs() < 1e-15);
        }
    }

    #[test]
    fn euclidean_circle_is_hyperbolic_circle() {
        for c in circles() {
            for k in 0..1000 {
                let angle = k as f64 * 2.0 * PI / 1000.0;
                let q = HalfPlanePoint::new(c.boundary_point(angle)).unwrap();
                assert!((hyp_distance(q, c.center) - c.radius).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn geodesic_examples() {
        assert_eq!(
            geodesic_through(hp(0.0, 1.0), hp(0.0, 2.0)).unwrap(),
            Geodesic::VerticalLine { x: 0.0 }
        );
        match geodesic_through(hp(0.0, 1.0), hp(1.0, 1.0)).unwrap() {
            Geodesic::HalfCircle { center, radius } => {
                assert!((center - 0.5).abs() < 1e-15);
                assert!((radius - 5f64.sqrt() / 2.0).abs() < 1e-15);
            }
            g => panic!("{g:?}"),
        }
        let [w1, w2, _] = omega().map(|w| HalfPlanePoint::new(w).unwrap());
        assert!(matches!(
            geodesic_through(w1, w2).unwrap(),
            Geodesic::VerticalLine { .. }
        ));
        assert_eq!(geodesic_through(w1, w1), Err(Error::CoincidentPoints));
    }

    #[test]
    fn arclength_coord_measures_distance() {
        let (p, q) = (hp(0.1, 0.3), hp(0.45, 0.12));
        let g = geodesic_through(p, q).unwrap();
        let du = (g.arclength_coord(p.value()) - g.arclength_coord(q.value())).abs();
        assert!((du - hyp_distance(p, q)).abs() < 1e-12);
        let m = geodesic_midpoint(p, q).unwrap();
        assert!((hyp_distance(p, m) - hyp_distance(m, q)).abs() < 1e-12);
        assert!(g.euclidean_distance(m.value()) < 1e-12);
    }

    #[test]
    fn tangents_from_equilateral_to_c1() {
        let c1 = circles()[0];
        let e = c1.to_euclidean();
        let (a, b) = tangents_from(HalfPlanePoint::new(z_eq()).unwrap(), &c1).unwrap();
        for t in [a, b] {
            assert!((t.geodesic.euclidean_distance(e.center) - e.radius).abs() < 1e-9);
            assert!(e.signed_distance(t.touch).abs() < 1e-9);
            // passes through the apex
            assert!(t.geodesic.euclidean_distance(z_eq()) < 1e-12);
        }
        assert!((a.touch - b.touch).norm() > 1e-3);
    }

    #[test]
    fn tangents_symmetric_below_center() {
        let c1 = circles()[0];
        let p = hp(1.0 / 3.0, 0.1);
        let (a, b) = tangent_geodesics_from(p, &c1).unwrap();
        match (a, b) {
            (
                Geodesic::HalfCircle {
                    center: ca,
                    radius: ra,
                },
                Geodesic::HalfCircle {
                    center: cb,
                    radius: rb,
                },
            ) => {
                assert!((ca + cb - 2.0 / 3.0).abs() < 1e-9, "{ca} {cb}");
                assert!((ra - rb).abs() < 1e-9);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tangent_stays_outside_disk() {
        let c3 = circles()[2];
        let e = c3.to_euclidean();
        let p = HalfPlanePoint::new(crate::landmarks::extremal_orbit_point()).unwrap();
        let (a, b) = tangents_from(p, &c3).unwrap();
        for t in [a, b] {
            let u0 = t.geodesic.arclength_coord(t.touch);
            for k in -200..=200 {
                let q = t.geodesic.point_at(u0 + k as f64 * 0.01);
                assert!(e.signed_distance(q) >= -1e-9);
            }
        }
    }

    #[test]
    fn tangents_need_outside_point() {
        let c1 = circles()[0];
        assert!(matches!(
            tangents_from(c1.center, &c1),
            Err(Error::InsideCircle { .. })
        ));
    }

    #[test]
    fn intersections_lie_on_both_curves() {
        let e = circles()[1].to_euclidean();
        let g = geodesic_through(hp(0.1, 0.2), hp(0.5, 0.3)).unwrap();
        let pts = g.intersect_circle(&e);
        assert_eq!(pts.len(), 2);
        for z in pts {
            assert!(g.euclidean_distance(z) < 1e-12);
            assert!(e.signed_distance(z).abs() < 1e-12);
        }
        let v = Geodesic::VerticalLine { x: 1.0 / 3.0 };
        assert_eq!(v.intersect_circle(&e).len(), 2);
        assert!(Geodesic::VerticalLine { x: 2.0 }
            .intersect_circle(&e)
            .is_empty());
    }
}
