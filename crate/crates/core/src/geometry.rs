//! Triangles up to similarity.
//!
//! A triangle is represented by the apex `z` of its normalized form: the
//! longest edge lies on `[0, 1]`, the shortest edge is the segment `[0, z]`
//! and `z` sits in the upper half-plane. The set of such apexes is
//!
//! ```text
//! Σ = { z : Im z > 0, Re z <= 1/2, |z - 1| <= 1 }
//! ```
//!
//! Trisection children are computed geometrically: each sub-triangle is
//! normalized from its vertices, which covers every piecewise branch of the
//! child maps at once.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{ensure_finite, format_complex, Complex64};
use crate::error::{Error, Result};

/// Slack on the closed boundary of Σ.
pub const SIGMA_TOL: f64 = 1e-12;

/// Minimum `2 * area / diameter^2` for a non-degenerate triangle.
pub const DEGENERACY_THRESHOLD: f64 = 1e-15;

/// True iff `z` lies in Σ up to [`SIGMA_TOL`] on the closed constraints.
pub fn in_sigma(z: Complex64) -> bool {
    sigma_violation(z).is_none()
}

fn sigma_violation(z: Complex64) -> Option<&'static str> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        Some("non-finite component")
    } else if z.im <= 0.0 {
        Some("Im(z) must be > 0")
    } else if z.re > 0.5 + SIGMA_TOL {
        Some("Re(z) must be <= 1/2")
    } else if (z - 1.0).norm() > 1.0 + SIGMA_TOL {
        Some("|z - 1| must be <= 1")
    } else {
        None
    }
}

/// Apex of a normalized triangle; always a member of Σ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct NormalizedTriangle(Complex64);

impl NormalizedTriangle {
    pub fn new(z: Complex64) -> Result<Self> {
        match sigma_violation(z) {
            None => Ok(Self(z)),
            Some(reason) => Err(Error::OutOfSigma {
                z: format_complex(z),
                reason,
            }),
        }
    }

    pub fn from_parts(re: f64, im: f64) -> Result<Self> {
        Self::new(Complex64::new(re, im))
    }

    /// Wraps a value produced by normalization, which lands in Σ by
    /// construction.
    pub(crate) fn from_normalized(z: Complex64) -> Self {
        debug_assert!(in_sigma(z), "normalization escaped Σ: {z}");
        Self(z)
    }

    #[inline]
    pub fn z(self) -> Complex64 {
        self.0
    }

    #[inline]
    pub fn re(self) -> f64 {
        self.0.re
    }

    #[inline]
    pub fn im(self) -> f64 {
        self.0.im
    }

    pub fn angles(self) -> AngleTriple {
        angles(self)
    }

    pub fn trisect(self) -> Trisection {
        trisect(self)
    }

    pub fn child(self, branch: Branch) -> NormalizedTriangle {
        child(self, branch)
    }
}

impl fmt::Display for NormalizedTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_complex(self.0))
    }
}

impl TryFrom<[f64; 2]> for NormalizedTriangle {
    type Error = Error;

    fn try_from(v: [f64; 2]) -> Result<Self> {
        Self::from_parts(v[0], v[1])
    }
}

impl From<NormalizedTriangle> for [f64; 2] {
    fn from(t: NormalizedTriangle) -> Self {
        [t.re(), t.im()]
    }
}

/// A non-degenerate triangle given by its vertices, in either orientation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EuclideanTriangle {
    vertices: [Complex64; 3],
}

impl EuclideanTriangle {
    pub fn new(a: Complex64, b: Complex64, c: Complex64) -> Result<Self> {
        for v in [a, b, c] {
            ensure_finite(v)?;
        }
        let diameter_sq = (b - a)
            .norm_sqr()
            .max((c - b).norm_sqr())
            .max((a - c).norm_sqr());
        let twice_area = cross(b - a, c - a).abs();
        let ratio = if diameter_sq > 0.0 {
            twice_area / diameter_sq
        } else {
            0.0
        };
        if ratio > DEGENERACY_THRESHOLD {
            Ok(Self {
                vertices: [a, b, c],
            })
        } else {
            Err(Error::Degenerate(ratio))
        }
    }

    pub fn vertices(&self) -> [Complex64; 3] {
        self.vertices
    }
}

#[inline]
fn cross(u: Complex64, v: Complex64) -> f64 {
    u.re * v.im - u.im * v.re
}

/// Translate, rotate, optionally conjugate, then magnify.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimilarityChain {
    pub translation: Complex64,
    /// Unit-modulus rotation factor.
    pub rotation: Complex64,
    pub conjugated: bool,
    pub magnification: f64,
}

impl SimilarityChain {
    pub fn apply(&self, v: Complex64) -> Complex64 {
        let w = (v + self.translation) * self.rotation;
        let w = if self.conjugated { w.conj() } else { w };
        w * self.magnification
    }
}

/// Interior angles sorted ascending.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngleTriple {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl AngleTriple {
    pub fn sum(&self) -> f64 {
        self.alpha + self.beta + self.gamma
    }
}

/// Maps a triangle to its normalized apex together with the similarity
/// that realizes the map.
///
/// The longest edge `[p, q]` goes to `[0, 1]`, where `p` is the endpoint
/// nearer the apex so that `Re z <= 1/2`. Ties are broken by vertex order.
pub fn normalize(tri: &EuclideanTriangle) -> (NormalizedTriangle, SimilarityChain) {
    let (z, chain) = normalize_vertices(tri.vertices);
    (NormalizedTriangle::from_normalized(z), chain)
}

fn normalize_vertices(v: [Complex64; 3]) -> (Complex64, SimilarityChain) {
    // edge k runs from v[k] to v[k+1]; its apex is v[k+2]
    let mut k = 0;
    let mut longest = (v[1] - v[0]).norm_sqr();
    for i in 1..3 {
        let len = (v[(i + 1) % 3] - v[i]).norm_sqr();
        if len > longest {
            longest = len;
            k = i;
        }
    }
    let (mut p, mut q) = (v[k], v[(k + 1) % 3]);
    let apex = v[(k + 2) % 3];
    if (apex - q).norm_sqr() < (apex - p).norm_sqr() {
        std::mem::swap(&mut p, &mut q);
    }
    let base = q - p;
    let length = base.norm();
    let rotation = base.conj() / length;
    let raw = (apex - p) * rotation;
    let chain = SimilarityChain {
        translation: -p,
        rotation,
        conjugated: raw.im < 0.0,
        magnification: 1.0 / length,
    };
    let mut z = chain.apply(apex);
    // the apex sits at distance <= |base| from both ends, so rounding is the
    // only way out of Σ here
    if z.re > 0.5 {
        z.re = 0.5;
    }
    (z, chain)
}

/// Interior angles at vertices `0`, `1` and `z`, in that order.
pub fn vertex_angles(z: NormalizedTriangle) -> [f64; 3] {
    let z = z.z();
    let at = |u: Complex64, w: Complex64| cross(u, w).abs().atan2(u.re * w.re + u.im * w.im);
    let one = Complex64::new(1.0, 0.0);
    [at(one, z), at(-one, z - one), at(-z, one - z)]
}

/// Sorted interior angles of the triangle `0, 1, z`.
///
/// For `z` in Σ the largest angle is at `z` and the smallest at `1`.
pub fn angles(z: NormalizedTriangle) -> AngleTriple {
    let mut a = vertex_angles(z);
    a.sort_by(f64::total_cmp);
    AngleTriple {
        alpha: a[0],
        beta: a[1],
        gamma: a[2],
    }
}

/// Sub-triangle selector, by the base third it stands on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    /// Base `[0, 1/3]`.
    L,
    /// Base `[1/3, 2/3]`.
    M,
    /// Base `[2/3, 1]`.
    R,
}

impl Branch {
    pub const ALL: [Branch; 3] = [Branch::L, Branch::M, Branch::R];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    pub fn letter(self) -> char {
        match self {
            Branch::L => 'L',
            Branch::M => 'M',
            Branch::R => 'R',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'L' => Some(Branch::L),
            'M' => Some(Branch::M),
            'R' => Some(Branch::R),
            _ => None,
        }
    }

    fn base(self) -> (f64, f64) {
        match self {
            Branch::L => (0.0, 1.0 / 3.0),
            Branch::M => (1.0 / 3.0, 2.0 / 3.0),
            Branch::R => (2.0 / 3.0, 1.0),
        }
    }
}

/// The three normalized children of a trisection and their normalizing maps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Trisection {
    pub children: [NormalizedTriangle; 3],
    pub chains: [SimilarityChain; 3],
}

impl Trisection {
    pub fn left(&self) -> NormalizedTriangle {
        self.children[0]
    }

    pub fn mid(&self) -> NormalizedTriangle {
        self.children[1]
    }

    pub fn right(&self) -> NormalizedTriangle {
        self.children[2]
    }
}

fn child_with_chain(
    z: NormalizedTriangle,
    branch: Branch,
) -> (NormalizedTriangle, SimilarityChain) {
    let (a, b) = branch.base();
    let (w, chain) = normalize_vertices([Complex64::new(a, 0.0), Complex64::new(b, 0.0), z.z()]);
    (NormalizedTriangle::from_normalized(w), chain)
}

/// Normalized child on the given base third.
pub fn child(z: NormalizedTriangle, branch: Branch) -> NormalizedTriangle {
    child_with_chain(z, branch).0
}

/// Longest-edge trisection of the triangle `0, 1, z`.
pub fn trisect(z: NormalizedTriangle) -> Trisection {
    let [l, m, r] = Branch::ALL.map(|b| child_with_chain(z, b));
    Trisection {
        children: [l.0, m.0, r.0],
        chains: [l.1, m.1, r.1],
    }
}

/// Closed form of the right-child map, valid only where the right child's
/// longest edge runs from `z` to `1`, i.e. `|z - 2/3| <= 1/3`:
///
/// ```text
/// W_R(z) = (3 conj(z) - 2) / (3 conj(z) - 3)
/// ```
///
/// Accepts any upper half-plane `z` in that disk whose image lands in Σ,
/// which includes every point of Σ in the disk.
pub fn w_r_closed_form(z: Complex64) -> Result<Complex64> {
    ensure_finite(z)?;
    if z.im <= 0.0 {
        return Err(Error::OutOfSigma {
            z: format_complex(z),
            reason: "Im(z) must be > 0",
        });
    }
    let out_of_branch = || Error::OutOfBranch(format_complex(z));
    if (z - 2.0 / 3.0).norm() > 1.0 / 3.0 + SIGMA_TOL {
        return Err(out_of_branch());
    }
    let w = 3.0 * z.conj();
    let image = (w - 2.0) / (w - 3.0);
    if in_sigma(image) {
        Ok(image)
    } else {
        Err(out_of_branch())
    }
}

/// Uniform sample from Σ by rejection from its bounding box.
pub fn random_in_sigma<R: rand::Rng + ?Sized>(rng: &mut R) -> NormalizedTriangle {
    let top = 3f64.sqrt() / 2.0;
    loop {
        let z = Complex64::new(rng.gen_range(0.0..=0.5), top * (1.0 - rng.gen::<f64>()));
        if let Ok(t) = NormalizedTriangle::new(z) {
            return t;
        }
    }
}

/// Angle sum for a normalized triangle, exposed for quick sanity checks.
pub fn angle_sum(z: NormalizedTriangle) -> f64 {
    angles(z).sum()
}
