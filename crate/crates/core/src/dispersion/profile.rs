use alloc::vec::Vec;
use core::f64::consts::PI;

use super::modes::{normalized_propagation_constant, v_number};
use super::{FiberSpec, ModeId};
use crate::constants::omega_from_wavelength;
use crate::numerics::{bessel_j, bessel_k, gauss_legendre};
use crate::Result;

const PANEL_NODES: usize = 16;
const CORE_PANELS: usize = 8;
/// Cladding integration stops where `w (r/a − 1)` reaches this value.
const CLADDING_DECAY: f64 = 60.0;

/// Transverse field of an LP mode, `f(r, φ) = R(r) cos(lφ)`, normalized to
/// unit power `∫∫ |f|² dx dy = 1` (units 1/m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeProfile {
    pub mode: ModeId,
    pub core_radius: f64,
    /// Core and cladding transverse parameters.
    pub u: f64,
    pub w: f64,
    amplitude: f64,
    j_edge: f64,
    k_edge: f64,
}

impl ModeProfile {
    fn unnormalized_radial(&self, r: f64) -> f64 {
        let a = self.core_radius;
        let l = self.mode.l;
        if r <= a {
            bessel_j(l, self.u * r / a).unwrap_or(0.0) / self.j_edge
        } else {
            bessel_k(l, self.w * r / a).unwrap_or(0.0) / self.k_edge
        }
    }

    /// Radial factor `R(r)`.
    pub fn radial(&self, r: f64) -> f64 {
        self.amplitude * self.unnormalized_radial(r)
    }

    /// Field value at a transverse point.
    pub fn value(&self, x: f64, y: f64) -> f64 {
        let r = libm::hypot(x, y);
        let phi = libm::atan2(y, x);
        self.radial(r) * libm::cos(self.mode.l as f64 * phi)
    }

    /// `∫_0^{2π} cos²(lφ) dφ`.
    fn angular_norm(&self) -> f64 {
        if self.mode.l == 0 {
            2.0 * PI
        } else {
            PI
        }
    }
}

/// Radial nodes and weights `(r, weight·r)` covering core and cladding.
fn radial_rule(a: f64, w_min: f64) -> Result<Vec<(f64, f64)>> {
    let unit = gauss_legendre(PANEL_NODES, 0.0, 1.0)?;
    let mut out = Vec::new();
    let panel = |lo: f64, hi: f64, out: &mut Vec<(f64, f64)>| {
        for (t, wt) in unit.iter() {
            let r = lo + (hi - lo) * t;
            out.push((r, wt * (hi - lo) * r));
        }
    };
    for i in 0..CORE_PANELS {
        let lo = a * i as f64 / CORE_PANELS as f64;
        let hi = a * (i + 1) as f64 / CORE_PANELS as f64;
        panel(lo, hi, &mut out);
    }
    // cladding in t = r/a − 1: geometric panels up to 1/w, then steps of 1/w
    let scale = 1.0 / w_min;
    let end = CLADDING_DECAY * scale;
    let mut lo = 0.0;
    let mut hi = 0.25f64.min(scale);
    while lo < end {
        panel(a * (1.0 + lo), a * (1.0 + hi), &mut out);
        lo = hi;
        hi = if hi < scale { (2.0 * hi).min(scale) } else { hi + scale };
        hi = hi.min(end);
    }
    Ok(out)
}

/// Unit-power transverse profile of `mode` at a vacuum wavelength.
pub fn mode_profile(fiber: &FiberSpec, mode: ModeId, wavelength: f64) -> Result<ModeProfile> {
    let v = v_number(fiber, wavelength)?;
    let b = normalized_propagation_constant(fiber, mode, omega_from_wavelength(wavelength))?;
    let u = v * libm::sqrt(1.0 - b);
    let w = v * libm::sqrt(b);
    let mut p = ModeProfile {
        mode,
        core_radius: fiber.core_radius,
        u,
        w,
        amplitude: 1.0,
        j_edge: bessel_j(mode.l, u)?,
        k_edge: bessel_k(mode.l, w)?,
    };
    let rule = radial_rule(fiber.core_radius, w)?;
    let power: f64 = rule
        .iter()
        .map(|&(r, wt)| {
            let f = p.unnormalized_radial(r);
            wt * f * f
        })
        .sum::<f64>()
        * p.angular_norm();
    p.amplitude = 1.0 / libm::sqrt(power);
    Ok(p)
}

/// `∫_0^{2π} Π cos(l_j φ) dφ` for four orders.
fn angular_four(l: [u32; 4]) -> f64 {
    let mut hits = 0;
    for signs in 0..8u32 {
        let mut total = l[0] as i64;
        for (j, &lj) in l[1..].iter().enumerate() {
            let s = if signs >> j & 1 == 1 { -1 } else { 1 };
            total += s * lj as i64;
        }
        if total == 0 {
            hits += 1;
        }
    }
    2.0 * PI * hits as f64 / 8.0
}

fn overlap_profiles(fiber: &FiberSpec, profiles: [ModeProfile; 4]) -> Result<f64> {
    let w_min = profiles.iter().map(|p| p.w).fold(f64::INFINITY, f64::min);
    let angular = angular_four(profiles.map(|p| p.mode.l));
    if angular == 0.0 {
        return Ok(0.0);
    }
    let rule = radial_rule(fiber.core_radius, w_min)?;
    let radial: f64 = rule
        .iter()
        .map(|&(r, wt)| wt * profiles.iter().map(|p| p.radial(r)).product::<f64>())
        .sum();
    Ok(angular * radial)
}

/// Four-field overlap `∫∫ f_1 f_2 f_3* f_4* dx dy` in 1/m².
///
/// The profiles are real, so conjugation is immaterial; LP modes with
/// `l > 0` use the `cos(lφ)` member of the degenerate pair.
pub fn overlap_four(fiber: &FiberSpec, modes: [ModeId; 4], wavelengths: [f64; 4]) -> Result<f64> {
    let mut profiles = [None; 4];
    for j in 0..4 {
        profiles[j] = Some(mode_profile(fiber, modes[j], wavelengths[j])?);
    }
    overlap_profiles(fiber, profiles.map(|p| p.expect("filled above")))
}

/// Two-mode overlap `∫∫ |f_a|² |f_b|² dx dy`, symmetric in its arguments.
pub fn overlap_two(
    fiber: &FiberSpec,
    mode_a: ModeId,
    mode_b: ModeId,
    wavelengths: [f64; 2],
) -> Result<f64> {
    // canonical argument order makes the result bitwise symmetric
    let (first, second) = if (mode_a, wavelengths[0].to_bits()) <= (mode_b, wavelengths[1].to_bits()) {
        ((mode_a, wavelengths[0]), (mode_b, wavelengths[1]))
    } else {
        ((mode_b, wavelengths[1]), (mode_a, wavelengths[0]))
    };
    let a = mode_profile(fiber, first.0, first.1)?;
    let b = mode_profile(fiber, second.0, second.1)?;
    overlap_profiles(fiber, [a, a, b, b])
}

/// Self overlap `∫∫ |f|⁴ dx dy`.
pub fn overlap_self(fiber: &FiberSpec, mode: ModeId, wavelength: f64) -> Result<f64> {
    let p = mode_profile(fiber, mode, wavelength)?;
    overlap_profiles(fiber, [p, p, p, p])
}
