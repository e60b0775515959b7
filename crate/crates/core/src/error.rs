use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value {0}")]
    NonFinite(String),

    #[error("degenerate triangle: normalized area {0:e} is below threshold")]
    Degenerate(f64),

    #[error("{z} is outside the triangle space: {reason}")]
    OutOfSigma { z: String, reason: &'static str },

    #[error("{0} is outside the branch |z - 2/3| <= 1/3 of the closed-form right map")]
    OutOfBranch(String),

    #[error("point {0} is not in the open upper half-plane")]
    NotInHalfPlane(String),

    #[error("geodesic through coincident points")]
    CoincidentPoints,

    #[error("point is not strictly outside the circle (distance {distance}, radius {radius})")]
    InsideCircle { distance: f64, radius: f64 },

    #[error("tangency search failed to converge")]
    NoConvergence,

    #[error("exhaustive depth {depth} exceeds the guard of {max}; use Monte Carlo simulation")]
    DepthGuard { depth: u32, max: u32 },

    #[error("orbit is empty")]
    EmptyOrbit,

    #[error("polyline needs at least one point and distinct consecutive points")]
    BadPolyline,

    #[error("{name} = {value} is out of range: {expected}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("invalid config: {0}")]
    Config(&'static str),

    #[error("cannot parse {input:?} as a complex number")]
    Parse { input: String },
}
