//! Longest-edge trisection (LE3) of triangles as a dynamical system on the
//! space of normalized triangles.
//!
//! * [`geometry`]: normalization, angles, trisection, closed-form right map.
//! * [`hyperbolic`]: half-plane distance, geodesics, circles, tangency.
//! * [`orbit`]: exhaustive and Monte Carlo orbit exploration.
//! * [`bounds`]: angle-growth regions, constants and bound checks.
//! * [`io`]: CSV/JSON/SVG emitters, run manifests and verification reports.

pub mod bounds;
pub mod cli;
pub mod complex;
pub mod error;
pub mod geometry;
pub mod hyperbolic;
pub mod io;
pub mod landmarks;
pub mod orbit;
pub mod verify;

pub use complex::{format_complex, parse_complex, Complex64, ComplexValue};
pub use error::{Error, Result};
pub use geometry::{
    angles, in_sigma, normalize, trisect, w_r_closed_form, AngleTriple, Branch, EuclideanTriangle,
    NormalizedTriangle, SimilarityChain, Trisection,
};
pub use hyperbolic::{hyp_distance, HalfPlanePoint, HyperbolicCircle};
pub use orbit::{OrbitSet, RandomWalkConfig};
