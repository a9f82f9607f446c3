use alloc::vec::Vec;
use core::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{FrequencyGrid, JointSpectrum, TableSet};
use crate::dispersion::propagation_constant;
use crate::numerics::{gauss_legendre, sinc};
use crate::source::{PumpScheme, SourceModel};
use crate::{Error, Result};

/// Node-doubling controls for the pump-frequency integral.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuadratureOptions {
    /// Lower bound for the starting Gauss–Legendre order.
    pub initial_nodes: usize,
    /// Relative L2 change between successive orders that counts as converged.
    pub tolerance: f64,
    pub max_nodes: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions {
            initial_nodes: 129,
            tolerance: 1e-6,
            max_nodes: 16385,
        }
    }
}

/// Half-width of the pump-frequency window in units of `σ_w`.
const WINDOW_WIDTHS: f64 = 6.0;

/// Fraction of the phasematching-free amplitude norm below which the
/// doubling residual is measured absolutely.
const RESIDUAL_FLOOR: f64 = 1e-6;

/// `Δk = k1(ω) − k2(ω_s + ω_i − ω) − k_s(ω_s) + k_i(ω_i) + Φ_NL`.
///
/// Terms are grouped so that `ω = ω_s` in a same-mode configuration gives
/// exactly `Φ_NL`.
pub fn delta_k_pulsed(model: &SourceModel, omega: f64, omega_s: f64, omega_i: f64) -> Result<f64> {
    let [k1, k2, ks, ki] = pulsed_wavenumbers(model, omega, omega_s, omega_i)?;
    Ok((k1 - ks) - (k2 - ki) + model.phi_nl)
}

/// `κ = k1(ω) + k2(ω_s + ω_i − ω) + k_s(ω_s) + k_i(ω_i)`.
pub fn kappa_pulsed(model: &SourceModel, omega: f64, omega_s: f64, omega_i: f64) -> Result<f64> {
    let [k1, k2, ks, ki] = pulsed_wavenumbers(model, omega, omega_s, omega_i)?;
    Ok(k1 + k2 + ks + ki)
}

fn pulsed_wavenumbers(model: &SourceModel, omega: f64, omega_s: f64, omega_i: f64) -> Result<[f64; 4]> {
    let c = &model.config;
    let f = &c.fiber;
    Ok([
        propagation_constant(f, c.pump1.mode, omega)?,
        propagation_constant(f, c.pump2.mode, (omega_s - omega) + omega_i)?,
        propagation_constant(f, c.signal_mode, omega_s)?,
        propagation_constant(f, c.idler_mode, omega_i)?,
    ])
}

/// Mismatch with a monochromatic pump 2 at `ω_cw`; pump 1 sits at
/// `ω_s + ω_i − ω_cw`.
pub fn delta_k_mixed(model: &SourceModel, omega_s: f64, omega_i: f64) -> Result<f64> {
    let [k1, k2, ks, ki] = mixed_wavenumbers(model, omega_s, omega_i)?;
    Ok((k1 - ks) - (k2 - ki) + model.phi_nl)
}

pub fn kappa_mixed(model: &SourceModel, omega_s: f64, omega_i: f64) -> Result<f64> {
    let [k1, k2, ks, ki] = mixed_wavenumbers(model, omega_s, omega_i)?;
    Ok(k1 + k2 + ks + ki)
}

fn mixed_wavenumbers(model: &SourceModel, omega_s: f64, omega_i: f64) -> Result<[f64; 4]> {
    let c = &model.config;
    let f = &c.fiber;
    let cw = c.pump2.omega0;
    Ok([
        propagation_constant(f, c.pump1.mode, (omega_i - cw) + omega_s)?,
        propagation_constant(f, c.pump2.mode, cw)?,
        propagation_constant(f, c.signal_mode, omega_s)?,
        propagation_constant(f, c.idler_mode, omega_i)?,
    ])
}

pub(crate) struct RawSpectrum {
    pub amplitude: DMatrix<Complex64>,
    pub residual: Option<f64>,
    pub nodes: Option<usize>,
    pub tables: TableSet,
}

impl RawSpectrum {
    fn into_spectrum(self, grid: &FrequencyGrid) -> Result<JointSpectrum> {
        let mut spectrum = JointSpectrum::from_amplitude(grid.clone(), self.amplitude)?;
        spectrum.residual = self.residual;
        spectrum.quadrature_nodes = self.nodes;
        Ok(spectrum)
    }
}

/// Pulsed-pump amplitude by direct integration over the pump 1 frequency,
/// normalized, with default quadrature controls.
pub fn jsa_pulsed_numeric(model: &SourceModel, grid: &FrequencyGrid) -> Result<JointSpectrum> {
    jsa_pulsed_numeric_with(model, grid, QuadratureOptions::default())
}

pub fn jsa_pulsed_numeric_with(
    model: &SourceModel,
    grid: &FrequencyGrid,
    options: QuadratureOptions,
) -> Result<JointSpectrum> {
    pulsed_raw(model, grid, options)?.into_spectrum(grid)
}

/// Per-node integrand data for one value of `ω_s + ω_i`.
struct NodeTerm {
    /// Quadrature weight × pump envelopes × `e^{i(Lκ/2 + ωτ)}` (pump part).
    weight: Complex64,
    /// `(L/2)(k1 − k2)` relative to the carriers.
    phase: f64,
    sin: f64,
    cos: f64,
}

pub(crate) fn pulsed_raw(
    model: &SourceModel,
    grid: &FrequencyGrid,
    options: QuadratureOptions,
) -> Result<RawSpectrum> {
    if model.config.scheme()? != PumpScheme::Pulsed {
        return Err(Error::UnsupportedConfiguration(
            "direct integration needs two pulsed pumps",
        ));
    }
    let c = &model.config;
    let (s1, s2) = model.sigmas();
    let sum_sq = s1 * s1 + s2 * s2;
    let rho = s1 * s1 / sum_sq;
    let sigma_w = s1 * s2 / libm::sqrt(sum_sq);
    let half = WINDOW_WIDTHS * sigma_w;
    let (w1, w2) = (c.pump1.omega0, c.pump2.omega0);
    // ω_s + ω_i − ω1⁰ − ω2⁰ = ν_s + ν_i + offset
    let offset = (grid.center.0 - w1) + (grid.center.1 - w2);
    let (ns, ni) = (grid.signal_len(), grid.idler_len());
    let s_lo = grid.signal_detuning(0) + grid.idler_detuning(0) + offset;
    let s_hi = grid.signal_detuning(ns - 1) + grid.idler_detuning(ni - 1) + offset;

    let pump1_window = (w1 + rho * s_lo - half, w1 + rho * s_hi + half);
    let pump2_window = (w2 + (1.0 - rho) * s_lo - half, w2 + (1.0 - rho) * s_hi + half);
    let tables = TableSet::build(
        &c.fiber,
        &[
            (c.pump1.mode, pump1_window.0, pump1_window.1),
            (c.pump2.mode, pump2_window.0, pump2_window.1),
            (c.signal_mode, grid.signal_axis[0], grid.signal_axis[ns - 1]),
            (c.idler_mode, grid.idler_axis[0], grid.idler_axis[ni - 1]),
        ],
    )?;
    let t1 = tables.get(c.pump1.mode, 0.5 * (pump1_window.0 + pump1_window.1))?;
    let t2 = tables.get(c.pump2.mode, 0.5 * (pump2_window.0 + pump2_window.1))?;
    let ts = tables.get(c.signal_mode, grid.center.0)?;
    let ti = tables.get(c.idler_mode, grid.center.1)?;
    let (k1c, k2c) = (t1.k(w1), t2.k(w2));

    let a = 0.5 * model.length();
    let tau = c.tau;
    let es: Vec<f64> = grid.signal_axis.iter().map(|&w| ts.k(w) - k1c).collect();
    let ei: Vec<f64> = grid.idler_axis.iter().map(|&w| ti.k(w) - k2c).collect();
    let outer = |j: usize, k: usize| Complex64::from_polar(1.0, a * (es[j] + ei[k]));

    let terms_for = |rule: &[(f64, f64)], s: f64, out: &mut Vec<NodeTerm>| {
        out.clear();
        let centre = rho * s;
        for &(x, w) in rule {
            let mu = centre + x;
            let nu2 = s - mu;
            let envelope = libm::exp(-(mu * mu) / (s1 * s1) - (nu2 * nu2) / (s2 * s2));
            let d1 = t1.k(w1 + mu) - k1c;
            let d2 = t2.k(w2 + nu2) - k2c;
            let phase = a * (d1 - d2);
            let weight = Complex64::from_polar(w * envelope, a * (d1 + d2) + mu * tau);
            out.push(NodeTerm {
                weight,
                phase,
                sin: libm::sin(phase),
                cos: libm::cos(phase),
            });
        }
    };
    // Σ_q weight · sinc(phase_q − y), the sine expanded so per-node trig is shared.
    let contract = |terms: &[NodeTerm], y: f64| -> Complex64 {
        let (sy, cy) = (libm::sin(y), libm::cos(y));
        let mut acc = Complex64::new(0.0, 0.0);
        for t in terms {
            let x = t.phase - y;
            let sc = if x.abs() < 1e-4 {
                sinc(x)
            } else {
                (t.sin * cy - t.cos * sy) / x
            };
            acc += t.weight * sc;
        }
        acc
    };
    let phi = model.phi_nl;
    let mismatch = |j: usize, k: usize| a * ((es[j] - ei[k]) - phi);

    let evaluate = |order: usize| -> Result<DMatrix<Complex64>> {
        let unit = gauss_legendre(order, -half, half)?;
        let rule: Vec<(f64, f64)> = unit.iter().collect();
        let mut terms = Vec::with_capacity(order);
        let mut f = DMatrix::from_element(ns, ni, Complex64::new(0.0, 0.0));
        if grid.has_common_step() {
            // ω_s + ω_i is constant along anti-diagonals
            for t in 0..ns + ni - 1 {
                terms_for(&rule, grid.sum_detuning(t) + offset, &mut terms);
                let j_lo = t.saturating_sub(ni - 1);
                let j_hi = t.min(ns - 1);
                for j in j_lo..=j_hi {
                    let k = t - j;
                    f[(j, k)] = contract(&terms, mismatch(j, k)) * outer(j, k);
                }
            }
        } else {
            for j in 0..ns {
                for k in 0..ni {
                    let s = grid.signal_detuning(j) + grid.idler_detuning(k) + offset;
                    terms_for(&rule, s, &mut terms);
                    f[(j, k)] = contract(&terms, mismatch(j, k)) * outer(j, k);
                }
            }
        }
        Ok(f)
    };

    // sinc zero crossings across the window
    let crossings = 2.0 * half * (model.length() * model.slowness_sum() + tau.abs()) / (2.0 * PI);
    let wanted = options.initial_nodes.max(libm::ceil(2.0 * crossings) as usize + 1);
    let mut order = 3;
    while order < wanted {
        order = 2 * order - 1;
    }
    if order > options.max_nodes {
        return Err(Error::NonConvergent {
            what: "pump-frequency quadrature",
            residual: f64::INFINITY,
            nodes: order,
        });
    }
    // ‖∫α1α2 dω‖ over the grid: the amplitude without any phasematching
    // cancellation. Amplitudes far below it are judged on an absolute scale.
    let mut bound = 0.0;
    for j in 0..ns {
        for k in 0..ni {
            let s = grid.signal_detuning(j) + grid.idler_detuning(k) + offset;
            let v = libm::sqrt(PI) * sigma_w * libm::exp(-s * s / sum_sq);
            bound += v * v;
        }
    }
    let floor = RESIDUAL_FLOOR * libm::sqrt(bound);
    let mut previous = evaluate(order)?;
    let mut residual = f64::INFINITY;
    loop {
        let next_order = 2 * order - 1;
        if next_order > options.max_nodes {
            return Err(Error::NonConvergent {
                what: "pump-frequency quadrature",
                residual,
                nodes: order,
            });
        }
        let next = evaluate(next_order)?;
        let scale = next.norm().max(floor);
        residual = if scale > 0.0 {
            (&next - &previous).norm() / scale
        } else {
            0.0
        };
        if residual < options.tolerance {
            return Ok(RawSpectrum {
                amplitude: next,
                residual: Some(residual),
                nodes: Some(next_order),
                tables,
            });
        }
        previous = next;
        order = next_order;
    }
}

/// Mixed-pump amplitude (pulsed pump 1, monochromatic pump 2), evaluated
/// pointwise and normalized.
pub fn jsa_mixed(model: &SourceModel, grid: &FrequencyGrid) -> Result<JointSpectrum> {
    mixed_raw(model, grid)?.into_spectrum(grid)
}

pub(crate) fn mixed_raw(model: &SourceModel, grid: &FrequencyGrid) -> Result<RawSpectrum> {
    if model.config.scheme()? != PumpScheme::Mixed {
        return Err(Error::UnsupportedConfiguration(
            "mixed amplitude needs a monochromatic pump 2",
        ));
    }
    let c = &model.config;
    let sigma = c.pump1.sigma;
    let (w1, cw) = (c.pump1.omega0, c.pump2.omega0);
    let (ns, ni) = (grid.signal_len(), grid.idler_len());
    let (sa, ia) = (&grid.signal_axis, &grid.idler_axis);
    let pump1_window = ((ia[0] - cw) + sa[0], (ia[ni - 1] - cw) + sa[ns - 1]);
    let tables = TableSet::build(
        &c.fiber,
        &[
            (c.pump1.mode, pump1_window.0, pump1_window.1),
            (c.pump2.mode, cw, cw),
            (c.signal_mode, sa[0], sa[ns - 1]),
            (c.idler_mode, ia[0], ia[ni - 1]),
        ],
    )?;
    let t1 = tables.get(c.pump1.mode, 0.5 * (pump1_window.0 + pump1_window.1))?;
    let k2 = tables.get(c.pump2.mode, cw)?.k(cw);
    let ts = tables.get(c.signal_mode, grid.center.0)?;
    let ti = tables.get(c.idler_mode, grid.center.1)?;
    let ks: Vec<f64> = sa.iter().map(|&w| ts.k(w)).collect();
    let ki: Vec<f64> = ia.iter().map(|&w| ti.k(w)).collect();
    let kappa0 = t1.k(w1) + ts.k(grid.center.0) + ti.k(grid.center.1);

    let a = 0.5 * model.length();
    let phi = model.phi_nl;
    let amplitude = DMatrix::from_fn(ns, ni, |j, k| {
        let pump = (ia[k] - cw) + sa[j];
        let nu = pump - w1;
        let k1 = t1.k(pump);
        let dk = (k1 - ks[j]) - (k2 - ki[k]) + phi;
        let kappa = (k1 + ks[j] + ki[k]) - kappa0;
        let envelope = libm::exp(-(nu * nu) / (sigma * sigma));
        Complex64::from_polar(envelope * sinc(a * dk), a * kappa)
    });
    Ok(RawSpectrum {
        amplitude,
        residual: None,
        nodes: None,
        tables,
    })
}
