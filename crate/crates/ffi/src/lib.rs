//! C ABI over the `le3` crate.
//!
//! Conventions:
//! * Fallible calls return an [`Le3Status`] and write results through out
//!   pointers. On failure the out pointers are left untouched and
//!   [`le3_last_error_message`] describes the error.
//! * Orbits are opaque [`Le3Orbit`] handles released with [`le3_orbit_free`].
//! * Panics never cross the boundary; they surface as `LE3_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use le3::bounds::{
    omega1_membership, omega2_membership, omega_radius, quotient_curve, t_max, DEFAULT_T_MIN,
};
use le3::orbit::{angle_stats, exhaustive_orbit, simulate_orbit, simulate_orbit_parallel};
use le3::{
    angles, hyp_distance, in_sigma, normalize, trisect, w_r_closed_form, Complex64, Error,
    EuclideanTriangle, HalfPlanePoint, NormalizedTriangle, OrbitSet, RandomWalkConfig,
    SimilarityChain,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Le3Complex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Le3Complex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<Le3Complex> for Complex64 {
    fn from(z: Le3Complex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

/// Angles in radians, ascending.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Le3Angles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

/// `z -> magnification * conj?(rotation * (z + translation))`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Le3Chain {
    pub translation: Le3Complex,
    pub rotation: Le3Complex,
    pub conjugated: bool,
    pub magnification: f64,
}

impl From<SimilarityChain> for Le3Chain {
    fn from(c: SimilarityChain) -> Self {
        Self {
            translation: c.translation.into(),
            rotation: c.rotation.into(),
            conjugated: c.conjugated,
            magnification: c.magnification,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Le3AngleStats {
    pub min_angle: f64,
    pub max_angle: f64,
    pub argmin: Le3Complex,
    pub argmax: Le3Complex,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Le3Status {
    Ok = 0,
    NullPointer = 1,
    NonFinite = 2,
    Degenerate = 3,
    OutOfSigma = 4,
    OutOfBranch = 5,
    NotInHalfPlane = 6,
    InvalidArgument = 7,
    EmptyOrbit = 8,
    DepthGuard = 9,
    IndexOutOfRange = 10,
    Panic = 99,
}

impl From<&Error> for Le3Status {
    fn from(e: &Error) -> Self {
        match e {
            Error::NonFinite(_) => Le3Status::NonFinite,
            Error::Degenerate(_) => Le3Status::Degenerate,
            Error::OutOfSigma { .. } => Le3Status::OutOfSigma,
            Error::OutOfBranch(_) => Le3Status::OutOfBranch,
            Error::NotInHalfPlane(_) => Le3Status::NotInHalfPlane,
            Error::EmptyOrbit => Le3Status::EmptyOrbit,
            Error::DepthGuard { .. } => Le3Status::DepthGuard,
            _ => Le3Status::InvalidArgument,
        }
    }
}

/// Opaque orbit handle.
pub struct Le3Orbit {
    inner: OrbitSet,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(Le3Status);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        set_error(e.to_string());
        Failure(Le3Status::from(&e))
    }
}

fn fail(status: Le3Status, msg: &str) -> Failure {
    set_error(msg.to_string());
    Failure(status)
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> Le3Status {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => Le3Status::Ok,
        Ok(Err(Failure(s))) => s,
        Err(_) => {
            set_error("internal panic".into());
            Le3Status::Panic
        }
    }
}

fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    // SAFETY: callers pass either null or a valid, writable pointer.
    unsafe { p.as_mut() }.ok_or_else(|| fail(Le3Status::NullPointer, "null output pointer"))
}

fn sigma(z: Le3Complex) -> Result<NormalizedTriangle, Failure> {
    Ok(NormalizedTriangle::new(z.into())?)
}

fn orbit_ref<'a>(o: *const Le3Orbit) -> Result<&'a Le3Orbit, Failure> {
    // SAFETY: non-null handles come from this library and are not yet freed.
    unsafe { o.as_ref() }.ok_or_else(|| fail(Le3Status::NullPointer, "null orbit handle"))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn le3_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread; empty if none. The
/// pointer is valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn le3_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub extern "C" fn le3_in_sigma(z: Le3Complex) -> bool {
    in_sigma(z.into())
}

/// Normalizes the triangle `(a, b, c)`. `out_chain` may be null.
///
/// # Safety
/// `out_z` must be valid for writes; `out_chain` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn le3_normalize(
    a: Le3Complex,
    b: Le3Complex,
    c: Le3Complex,
    out_z: *mut Le3Complex,
    out_chain: *mut Le3Chain,
) -> Le3Status {
    guard(|| {
        let dst = out(out_z)?;
        let tri = EuclideanTriangle::new(a.into(), b.into(), c.into())?;
        let (z, chain) = normalize(&tri);
        *dst = z.z().into();
        if let Some(ch) = out_chain.as_mut() {
            *ch = chain.into();
        }
        Ok(())
    })
}

/// Writes the left, middle and right children to `out_children[0..3]` and,
/// when `out_chains` is not null, their maps to `out_chains[0..3]`.
///
/// # Safety
/// `out_children` must point to 3 writable elements; `out_chains` must be
/// null or point to 3 writable elements.
#[no_mangle]
pub unsafe extern "C" fn le3_trisect(
    z: Le3Complex,
    out_children: *mut Le3Complex,
    out_chains: *mut Le3Chain,
) -> Le3Status {
    guard(|| {
        if out_children.is_null() {
            return Err(fail(Le3Status::NullPointer, "null output pointer"));
        }
        let t = trisect(sigma(z)?);
        let kids = std::slice::from_raw_parts_mut(out_children, 3);
        for (dst, c) in kids.iter_mut().zip(t.children) {
            *dst = c.z().into();
        }
        if !out_chains.is_null() {
            let chains = std::slice::from_raw_parts_mut(out_chains, 3);
            for (dst, c) in chains.iter_mut().zip(t.chains) {
                *dst = c.into();
            }
        }
        Ok(())
    })
}

/// # Safety
/// `out_angles` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn le3_angles(z: Le3Complex, out_angles: *mut Le3Angles) -> Le3Status {
    guard(|| {
        let dst = out(out_angles)?;
        let a = angles(sigma(z)?);
        *dst = Le3Angles {
            alpha: a.alpha,
            beta: a.beta,
            gamma: a.gamma,
        };
        Ok(())
    })
}

/// # Safety
/// `out_z` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn le3_w_r_closed_form(z: Le3Complex, out_z: *mut Le3Complex) -> Le3Status {
    guard(|| {
        let dst = out(out_z)?;
        *dst = w_r_closed_form(z.into())?.into();
        Ok(())
    })
}

/// Hyperbolic distance between two points of the upper half-plane.
///
/// # Safety
/// `out_d` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn le3_hyp_distance(
    a: Le3Complex,
    b: Le3Complex,
    out_d: *mut f64,
) -> Le3Status {
    guard(|| {
        let dst = out(out_d)?;
        *dst = hyp_distance(
            HalfPlanePoint::new(a.into())?,
            HalfPlanePoint::new(b.into())?,
        );
        Ok(())
    })
}

/// Distance from `z` to the nearest of the three fixed-orbit centres.
///
/// # Safety
/// `out_r` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn le3_omega_radius(z: Le3Complex, out_r: *mut f64) -> Le3Status {
    guard(|| {
        let dst = out(out_r)?;
        *dst = omega_radius(sigma(z)?);
        Ok(())
    })
}

/// # Safety
/// `out_in` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn le3_omega1_membership(z: Le3Complex, out_in: *mut bool) -> Le3Status {
    guard(|| {
        let dst = out(out_in)?;
        *dst = omega1_membership(sigma(z)?);
        Ok(())
    })
}

/// # Safety
/// `out_in` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn le3_omega2_membership(z: Le3Complex, out_in: *mut bool) -> Le3Status {
    guard(|| {
        let dst = out(out_in)?;
        *dst = omega2_membership(sigma(z)?);
        Ok(())
    })
}

/// `arccos(-5 / (2√7)) / (π/3)`.
#[no_mangle]
pub extern "C" fn le3_theorem1_constant() -> f64 {
    le3::bounds::theorem1_constant()
}

/// Maximum of the quotient curve on `[1e-4, arcsin(3/5)]` with step `t_step`.
///
/// # Safety
/// `out_max` and `out_argmax_t` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn le3_quotient_max(
    t_step: f64,
    out_max: *mut f64,
    out_argmax_t: *mut f64,
) -> Le3Status {
    guard(|| {
        let (m, t) = (out(out_max)?, out(out_argmax_t)?);
        let curve = quotient_curve(DEFAULT_T_MIN, t_max(), t_step)?;
        *m = curve.max_ratio;
        *t = curve.argmax_t;
        Ok(())
    })
}

fn emit(orbit: OrbitSet, out_orbit: &mut *mut Le3Orbit) {
    *out_orbit = Box::into_raw(Box::new(Le3Orbit { inner: orbit }));
}

/// Breadth-first orbit to `depth`. Free the handle with [`le3_orbit_free`].
///
/// # Safety
/// `out_orbit` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn le3_orbit_exhaustive(
    z: Le3Complex,
    depth: u32,
    out_orbit: *mut *mut Le3Orbit,
) -> Le3Status {
    guard(|| {
        let dst = out(out_orbit)?;
        emit(exhaustive_orbit(sigma(z)?, depth)?, dst);
        Ok(())
    })
}

/// Monte Carlo orbit. The result does not depend on `parallel`.
///
/// # Safety
/// `out_orbit` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn le3_orbit_simulate(
    z: Le3Complex,
    walkers: u64,
    steps: u64,
    seed: u64,
    parallel: bool,
    out_orbit: *mut *mut Le3Orbit,
) -> Le3Status {
    guard(|| {
        let dst = out(out_orbit)?;
        let root = sigma(z)?;
        let cfg = RandomWalkConfig::new(walkers, steps, seed)?;
        let orbit = if parallel {
            simulate_orbit_parallel(root, &cfg)
        } else {
            simulate_orbit(root, &cfg)
        };
        emit(orbit, dst);
        Ok(())
    })
}

/// Number of points; 0 for a null handle.
///
/// # Safety
/// `orbit` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn le3_orbit_len(orbit: *const Le3Orbit) -> usize {
    orbit.as_ref().map_or(0, |o| o.inner.len())
}

/// Point `index` in canonical (re, im) order.
///
/// # Safety
/// `orbit` must be a live handle and `out_z` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn le3_orbit_point(
    orbit: *const Le3Orbit,
    index: usize,
    out_z: *mut Le3Complex,
) -> Le3Status {
    guard(|| {
        let o = orbit_ref(orbit)?;
        let dst = out(out_z)?;
        let p = o
            .inner
            .points()
            .get(index)
            .ok_or_else(|| fail(Le3Status::IndexOutOfRange, "orbit index out of range"))?;
        *dst = p.z().into();
        Ok(())
    })
}

/// # Safety
/// `orbit` must be a live handle and `out_stats` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn le3_orbit_angle_stats(
    orbit: *const Le3Orbit,
    out_stats: *mut Le3AngleStats,
) -> Le3Status {
    guard(|| {
        let o = orbit_ref(orbit)?;
        let dst = out(out_stats)?;
        let s = angle_stats(&o.inner)?;
        *dst = Le3AngleStats {
            min_angle: s.min_angle,
            max_angle: s.max_angle,
            argmin: s.argmin.z().into(),
            argmax: s.argmax.z().into(),
        };
        Ok(())
    })
}

/// Releases a handle. Null is a no-op.
///
/// # Safety
/// `orbit` must be null or a live handle that is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn le3_orbit_free(orbit: *mut Le3Orbit) {
    if !orbit.is_null() {
        drop(Box::from_raw(orbit));
    }
}
