use alloc::vec::Vec;
use core::f64::consts::PI;

use super::{DispersionSample, FiberSpec, ModeId};
use crate::constants::{wavelength_from_omega, SPEED_OF_LIGHT};
use crate::numerics::{bessel_j, bessel_j_pair, bessel_k_pair};
use crate::{Error, Result};

/// Number of uniform brackets scanned in `b ∈ (1e-6, 1 − 1e-6)`.
pub const BRACKETS: usize = 2000;

const B_MIN: f64 = 1e-6;
const B_MAX: f64 = 1.0 - 1e-6;

/// A guided LP mode and its normalized propagation constant
/// `b = (n_eff² − n_clad²) / NA²`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GuidedMode {
    pub mode: ModeId,
    pub b: f64,
}

/// Normalized frequency `V = 2π a NA / λ`.
pub fn v_number(fiber: &FiberSpec, wavelength: f64) -> Result<f64> {
    fiber.cladding.index(wavelength)?;
    Ok(2.0 * PI * fiber.core_radius * fiber.numerical_aperture / wavelength)
}

/// Pole-free form of the LP characteristic equation,
/// `u J_{l−1}(u) K_l(w) + w K_{l−1}(w) J_l(u)`.
fn char_fn(l: u32, v: f64, b: f64) -> f64 {
    let u = v * libm::sqrt(1.0 - b);
    let w = v * libm::sqrt(b);
    if l == 0 {
        let (j0, j1) = bessel_j_pair(1, u).unwrap_or((f64::NAN, f64::NAN));
        let (k0, k1) = bessel_k_pair(1, w).unwrap_or((f64::NAN, f64::NAN));
        -u * j1 * k0 + w * k1 * j0
    } else {
        let (jm, j) = bessel_j_pair(l, u).unwrap_or((f64::NAN, f64::NAN));
        let (km, k) = bessel_k_pair(l, w).unwrap_or((f64::NAN, f64::NAN));
        u * jm * k + w * km * j
    }
}

/// Residual of `u J_{l−1}(u)/J_l(u) + w K_{l−1}(w)/K_l(w) = 0`, with
/// `J_{−1} = −J_1` and `K_{−1} = K_1`.
pub fn characteristic_residual(l: u32, v: f64, b: f64) -> f64 {
    let u = v * libm::sqrt(1.0 - b);
    let w = v * libm::sqrt(b);
    if l == 0 {
        let (j0, j1) = bessel_j_pair(1, u).unwrap_or((f64::NAN, f64::NAN));
        let (k0, k1) = bessel_k_pair(1, w).unwrap_or((f64::NAN, f64::NAN));
        -u * j1 / j0 + w * k1 / k0
    } else {
        let (jm, j) = bessel_j_pair(l, u).unwrap_or((f64::NAN, f64::NAN));
        let (km, k) = bessel_k_pair(l, w).unwrap_or((f64::NAN, f64::NAN));
        u * jm / j + w * km / k
    }
}

fn bisect(l: u32, v: f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut g_lo = char_fn(l, v, lo);
    if g_lo == 0.0 {
        return lo;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let g_mid = char_fn(l, v, mid);
        if g_mid == 0.0 {
            return mid;
        }
        if (g_mid < 0.0) == (g_lo < 0.0) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Roots in `b` for azimuthal order `l`, in decreasing order, stopping
/// after `limit` roots.
fn roots_for_order(l: u32, v: f64, brackets: usize, limit: usize) -> Vec<f64> {
    let mut roots = Vec::new();
    let step = (B_MAX - B_MIN) / brackets as f64;
    let node = |j: usize| if j == 0 { B_MAX } else { B_MAX - j as f64 * step };
    let mut b_hi = node(0);
    let mut g_hi = char_fn(l, v, b_hi);
    for j in 1..=brackets {
        if roots.len() >= limit {
            break;
        }
        let b_lo = if j == brackets { B_MIN } else { node(j) };
        let g_lo = char_fn(l, v, b_lo);
        if g_hi == 0.0 {
            roots.push(b_hi);
        } else if g_lo != 0.0 && (g_lo < 0.0) != (g_hi < 0.0) {
            roots.push(bisect(l, v, b_lo, b_hi));
        }
        b_hi = b_lo;
        g_hi = g_lo;
    }
    roots
}

/// The `n`-th positive zero of `J_order`.
fn bessel_zero(order: u32, n: u32) -> f64 {
    let f = |x: f64| bessel_j(order, x).unwrap_or(f64::NAN);
    let mut count = 0;
    let step = 0.05;
    let mut a = if order == 0 { 0.0 } else { 0.5 };
    let mut fa = f(a);
    loop {
        let b = a + step;
        let fb = f(b);
        if (fa < 0.0) != (fb < 0.0) {
            count += 1;
            if count == n {
                let (mut lo, mut hi, mut flo) = (a, b, fa);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    let fm = f(mid);
                    if (fm < 0.0) == (flo < 0.0) {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                }
                return 0.5 * (lo + hi);
            }
        }
        a = b;
        fa = fb;
    }
}

/// Normalized frequency below which `mode` is not guided.
pub fn cutoff_v(mode: ModeId) -> f64 {
    match (mode.l, mode.m) {
        (0, 1) => 0.0,
        (0, m) => bessel_zero(1, m - 1),
        (1, m) => bessel_zero(0, m),
        (l, m) => bessel_zero(l - 1, m),
    }
}

/// All guided LP modes, sorted by decreasing `b`.
pub fn solve_lp_modes(fiber: &FiberSpec, wavelength: f64) -> Result<Vec<GuidedMode>> {
    solve_lp_modes_with(fiber, wavelength, BRACKETS)
}

/// [`solve_lp_modes`] with an explicit bracket count.
pub fn solve_lp_modes_with(
    fiber: &FiberSpec,
    wavelength: f64,
    brackets: usize,
) -> Result<Vec<GuidedMode>> {
    if brackets < 2 {
        return Err(Error::invalid("brackets", "need at least two brackets"));
    }
    let v = v_number(fiber, wavelength)?;
    let mut modes = Vec::new();
    let mut l = 0;
    loop {
        if l > 0 && cutoff_v(ModeId { l, m: 1 }) >= v {
            break;
        }
        let roots = roots_for_order(l, v, brackets, usize::MAX);
        if roots.is_empty() && l > 0 {
            break;
        }
        for (i, b) in roots.into_iter().enumerate() {
            modes.push(GuidedMode {
                mode: ModeId { l, m: i as u32 + 1 },
                b,
            });
        }
        l += 1;
    }
    modes.sort_by(|a, b| b.b.total_cmp(&a.b));
    Ok(modes)
}

fn not_guided(mode: ModeId, omega: f64, v: f64) -> Error {
    Error::ModeNotGuided {
        mode,
        wavelength_nm: wavelength_from_omega(omega) * 1e9,
        v,
        cutoff: cutoff_v(mode),
    }
}

/// Normalized propagation constant of `mode` at angular frequency `omega`.
pub fn normalized_propagation_constant(fiber: &FiberSpec, mode: ModeId, omega: f64) -> Result<f64> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::invalid("omega", "must be positive"));
    }
    if mode.m == 0 {
        return Err(Error::invalid("mode", "radial order starts at 1"));
    }
    let wavelength = wavelength_from_omega(omega);
    let v = v_number(fiber, wavelength)?;
    if v <= cutoff_v(mode) {
        return Err(not_guided(mode, omega, v));
    }
    let roots = roots_for_order(mode.l, v, BRACKETS, mode.m as usize);
    roots
        .get(mode.m as usize - 1)
        .copied()
        .ok_or_else(|| not_guided(mode, omega, v))
}

/// Propagation constant `k(ω)` in rad/m.
pub fn propagation_constant(fiber: &FiberSpec, mode: ModeId, omega: f64) -> Result<f64> {
    let b = normalized_propagation_constant(fiber, mode, omega)?;
    let n = fiber.cladding_index(omega)?;
    let na = fiber.numerical_aperture;
    Ok(omega / SPEED_OF_LIGHT * libm::sqrt(n * n + b * na * na))
}

/// Group slowness `dk/dω` in s/m.
///
/// Central differences with relative step `1e-6`, refined by two levels of
/// Richardson extrapolation that must agree to `1e-8` relative.
pub fn group_slowness(fiber: &FiberSpec, mode: ModeId, omega: f64) -> Result<f64> {
    let k = |w: f64| propagation_constant(fiber, mode, w);
    let h = 1e-6 * omega;
    let diff = |h: f64| -> Result<f64> { Ok((k(omega + h)? - k(omega - h)?) / (2.0 * h)) };
    let d1 = diff(h)?;
    let d2 = diff(0.5 * h)?;
    let d4 = diff(0.25 * h)?;
    let r1 = (4.0 * d2 - d1) / 3.0;
    let r2 = (4.0 * d4 - d2) / 3.0;
    let residual = ((r2 - r1) / r2).abs();
    if !(residual <= 1e-8) {
        return Err(Error::NonConvergent {
            what: "group slowness extrapolation",
            residual,
            nodes: 3,
        });
    }
    Ok(r2)
}

/// `k`, `k′` and effective index of `mode` at `omega`.
pub fn sample(fiber: &FiberSpec, mode: ModeId, omega: f64) -> Result<DispersionSample> {
    let k = propagation_constant(fiber, mode, omega)?;
    let k_prime = group_slowness(fiber, mode, omega)?;
    Ok(DispersionSample {
        omega,
        k,
        k_prime,
        n_eff: k * SPEED_OF_LIGHT / omega,
    })
}
