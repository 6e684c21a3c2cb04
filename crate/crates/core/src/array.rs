//! Array-response (steering) vectors of the BS ULA and the IRS URAs.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::AnglePair;

fn check_positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be positive, got {value}")))
    }
}

/// ULA response: entry `n` is `exp(-j 2π n d sin θ / λ)` for `n = 0..N`.
///
/// Only `angle.azimuth_rad` is used; it holds the AoD from boresight.
pub fn ula_response(angle: AnglePair, n_antennas: usize, spacing_m: f64, wavelength_m: f64) -> Result<Vec<Complex64>> {
    if n_antennas == 0 {
        return Err(Error::InvalidParameter("antenna count must be at least 1".into()));
    }
    check_positive("antenna spacing", spacing_m)?;
    check_positive("wavelength", wavelength_m)?;
    let step = -2.0 * PI * spacing_m * libm::sin(angle.azimuth_rad) / wavelength_m;
    Ok((0..n_antennas).map(|n| Complex64::cis(step * n as f64)).collect())
}

/// URA response for an IRS of `m1` rows (vertical, along `z`) by `m2`
/// columns (horizontal, along `x`).
///
/// Element `m` (zero-based) sits in column `m / m1` and row `m % m1`, and
/// its entry is `exp(-j 2π d (col · sin θe cos θa + row · cos θe) / λ)`.
pub fn ura_response(angle: AnglePair, m1: usize, m2: usize, spacing_m: f64, wavelength_m: f64) -> Result<Vec<Complex64>> {
    if m1 == 0 || m2 == 0 {
        return Err(Error::InvalidParameter(format!("URA size must be at least 1x1, got {m1}x{m2}")));
    }
    check_positive("element spacing", spacing_m)?;
    check_positive("wavelength", wavelength_m)?;
    let k = -2.0 * PI * spacing_m / wavelength_m;
    let horizontal = k * libm::sin(angle.elevation_rad) * libm::cos(angle.azimuth_rad);
    let vertical = k * libm::cos(angle.elevation_rad);
    Ok((0..m1 * m2)
        .map(|m| {
            let col = (m / m1) as f64;
            let row = (m % m1) as f64;
            Complex64::cis(col * horizontal + row * vertical)
        })
        .collect())
}
