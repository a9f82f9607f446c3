#![allow(dead_code)]

pub mod oracles;

use cpsfwm_core::constants::{omega_from_wavelength, THZ};
use cpsfwm_core::dispersion::{FiberSpec, ModeId};
use cpsfwm_core::source::{PumpConfig, SourceConfig};

pub const POWER: f64 = 0.05;

pub fn omega1() -> f64 {
    omega_from_wavelength(820e-9)
}

pub fn omega2() -> f64 {
    omega_from_wavelength(532e-9)
}

/// r = 1.5 µm, NA = 0.13.
pub fn thin_fiber(length: f64) -> FiberSpec {
    FiberSpec::new(1.5e-6, 0.13, length).unwrap()
}

/// r = 2 µm, NA = 0.3.
pub fn few_mode_fiber(length: f64) -> FiberSpec {
    FiberSpec::new(2.0e-6, 0.3, length).unwrap()
}

/// Both pumps pulsed, bandwidths in units of 1e12 rad/s.
pub fn pulsed(sigma1_thz: f64, sigma2_thz: f64, length: f64) -> SourceConfig {
    let p1 = PumpConfig::new(omega1(), sigma1_thz * THZ, POWER, ModeId::LP01).unwrap();
    let p2 = PumpConfig::new(omega2(), sigma2_thz * THZ, POWER, ModeId::LP01).unwrap();
    SourceConfig::new(thin_fiber(length), p1, p2)
}

/// Pulsed pump 1, monochromatic pump 2.
pub fn mixed(sigma_thz: f64, length: f64) -> SourceConfig {
    pulsed(sigma_thz, 0.0, length)
}
