//! Physical and model constants (SI units).

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Vacuum permittivity, F/m.
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;

/// Default third-order susceptibility of fused silica, m²/V².
pub const CHI3_FUSED_SILICA: f64 = 1.9e-22;

/// Coefficient of the Gaussian fit `sinc(x) ≈ exp(-Γ x²)`.
pub const SINC_GAUSSIAN_GAMMA: f64 = 0.193;

/// Value of `B` below which the pulsed phasematching function is
/// indistinguishable from its Gaussian limit.
pub const FACTORABLE_B: f64 = 0.14;

/// `FWHM = σ · FWHM_PER_SIGMA` for a Gaussian intensity `exp(-2ν²/σ²)`.
pub const FWHM_PER_SIGMA: f64 = 1.177_410_022_515_474_6; // sqrt(2 ln 2)

/// Angular frequency unit used for pump bandwidths ("THz" = 1e12 rad/s).
pub const THZ: f64 = 1.0e12;

/// Angular frequency for a vacuum wavelength in metres.
#[inline]
pub fn omega_from_wavelength(wavelength: f64) -> f64 {
    2.0 * core::f64::consts::PI * SPEED_OF_LIGHT / wavelength
}

/// Vacuum wavelength in metres for an angular frequency.
#[inline]
pub fn wavelength_from_omega(omega: f64) -> f64 {
    2.0 * core::f64::consts::PI * SPEED_OF_LIGHT / omega
}
