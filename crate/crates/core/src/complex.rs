//! Complex values as used throughout the crate.
//!
//! Arithmetic is [`num_complex::Complex64`]; this module adds the textual
//! `a+bi` form and the finiteness guard applied at public entry points.

use crate::error::{Error, Result};
pub use num_complex::Complex64;

/// Complex value with finite components.
pub type ComplexValue = Complex64;

pub fn ensure_finite(z: Complex64) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(format_complex(z)))
    }
}

/// Parses `a+bi`, `a-bi`, `bi` or `a`. Whitespace anywhere is ignored.
pub fn parse_complex(input: &str) -> Result<Complex64> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || Error::Parse {
        input: input.to_string(),
    };
    if compact.is_empty() {
        return Err(err());
    }
    let z: Complex64 = compact.parse().map_err(|_| err())?;
    ensure_finite(z).map_err(|_| err())
}

/// Shortest round-trip text for each component, e.g. `0.5+0.8660254037844386i`.
pub fn format_complex(z: Complex64) -> String {
    if z.im.is_sign_negative() {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// Positional decimal with 17 significant digits (lossless for `f64`).
pub fn format_sig17(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (16 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}
