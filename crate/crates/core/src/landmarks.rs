//! Distinguished points of Σ and the circles around the finite orbit.

use crate::complex::Complex64;
use crate::hyperbolic::{HalfPlanePoint, HyperbolicCircle};

fn sqrt2() -> f64 {
    2f64.sqrt()
}

fn sqrt3() -> f64 {
    3f64.sqrt()
}

/// The equilateral triangle, `1/2 + (√3/2) i`.
pub fn z_eq() -> Complex64 {
    Complex64::new(0.5, sqrt3() / 2.0)
}

/// The right isosceles triangle, `1/2 + i/2`.
pub fn right_isosceles() -> Complex64 {
    Complex64::new(0.5, 0.5)
}

/// `ω1, ω2, ω3`: the three shapes whose joint orbit is `{ω1, ω2, ω3}`.
pub fn omega() -> [Complex64; 3] {
    [
        Complex64::new(1.0 / 3.0, sqrt2() / 3.0),
        Complex64::new(1.0 / 3.0, sqrt2() / 6.0),
        Complex64::new(4.0 / 9.0, sqrt2() / 9.0),
    ]
}

/// Hyperbolic radius `ln √2` shared by the circles around `ω1, ω2, ω3`.
pub fn circle_radius() -> f64 {
    sqrt2().ln()
}

/// `C1, C2, C3`: hyperbolic circles of radius `ln √2` about `ω1, ω2, ω3`.
pub fn circles() -> [HyperbolicCircle; 3] {
    omega().map(|w| {
        HyperbolicCircle::new(
            HalfPlanePoint::new(w).expect("ω in upper half-plane"),
            circle_radius(),
        )
        .expect("positive radius")
    })
}

/// Orbit point of the equilateral triangle with the largest apex angle,
/// `29/62 + (3√3/62) i`; its smallest angle is also the orbit minimum.
pub fn extremal_orbit_point() -> Complex64 {
    Complex64::new(29.0 / 62.0, 3.0 * sqrt3() / 62.0)
}

/// The ten points of the equilateral orbit that lie outside `C1 ∪ C2 ∪ C3`.
/// Everything else in that orbit is inside the circles.
///
/// Values were checked by exact symbolic trisection.
pub fn gamma_eq_exceptional() -> [Complex64; 10] {
    let s3 = sqrt3();
    [
        Complex64::new(0.5, s3 / 2.0),
        Complex64::new(1.0 / 14.0, 3.0 * s3 / 14.0),
        Complex64::new(1.0 / 6.0, s3 / 6.0),
        Complex64::new(5.0 / 26.0, 3.0 * s3 / 26.0),
        Complex64::new(13.0 / 42.0, s3 / 14.0),
        Complex64::new(5.0 / 14.0, s3 / 14.0),
        Complex64::new(7.0 / 18.0, s3 / 18.0),
        Complex64::new(29.0 / 62.0, 3.0 * s3 / 62.0),
        Complex64::new(0.5, s3 / 18.0),
        Complex64::new(0.5, s3 / 6.0),
    ]
}
