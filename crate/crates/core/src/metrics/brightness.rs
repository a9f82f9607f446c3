use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};

use crate::constants::SPEED_OF_LIGHT;
use crate::dispersion::DispersionTable;
use crate::jsa::{
    mixed_raw, pulsed_raw, FrequencyGrid, QuadratureOptions, RawSpectrum,
};
use crate::source::{PumpScheme, SourceConfig, SourceModel};
use crate::{Error, Result};

/// Default node count per axis of pair-rate grids.
pub const BRIGHTNESS_NODES: usize = 129;
/// Half-span of pair-rate grids in effective marginal widths; wide enough
/// that truncated sinc² tails stay below a percent.
pub const BRIGHTNESS_SPAN_WIDTHS: f64 = 20.0;
/// Node cap per axis of pair-rate grids.
pub const BRIGHTNESS_MAX_NODES: usize = 2049;
/// Largest relative change allowed between a grid and its every-other-node
/// subgrid.
pub const BRIGHTNESS_TOLERANCE: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum BrightnessMethod {
    Numeric,
    ClosedForm,
}

/// Emitted pair rate.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BrightnessResult {
    pub pairs_per_second: f64,
    pub method: BrightnessMethod,
    /// Relative change against the half-resolution grid (numeric only).
    pub residual: Option<f64>,
    pub config: SourceConfig,
}

/// Grid suited to pair-rate integrals: ±20 widths per axis, with steps
/// that also resolve the thin direction of correlated spectra.
pub fn brightness_grid(model: &SourceModel, n: usize) -> Result<FrequencyGrid> {
    FrequencyGrid::resolving(model, n, BRIGHTNESS_SPAN_WIDTHS, BRIGHTNESS_MAX_NODES)
}

/// `n1 n2 c² γ² p1 p2 / (ω1 ω2)`, shared by every rate expression.
fn common_factor(model: &SourceModel) -> Result<f64> {
    let c = &model.config;
    let gamma = model.gamma_sfwm()?;
    Ok(model.pump1.n_eff * model.pump2.n_eff * SPEED_OF_LIGHT * SPEED_OF_LIGHT * gamma * gamma
        * c.pump1.avg_power
        * c.pump2.avg_power
        / (c.pump1.omega0 * c.pump2.omega0))
}

/// `ω k′(ω) / n(ω)²`; `h` is the product of the signal and idler factors.
fn h_factor(omega: f64, k_prime: f64, n_eff: f64) -> f64 {
    omega * k_prime / (n_eff * n_eff)
}

fn h_axis(table: &DispersionTable, axis: &[f64]) -> Vec<f64> {
    axis.iter()
        .map(|&w| h_factor(w, table.k_prime(w), table.n_eff(w)))
        .collect()
}

fn h_centre(model: &SourceModel) -> f64 {
    let (s, i) = (&model.signal, &model.idler);
    h_factor(s.omega, s.k_prime, s.n_eff) * h_factor(i.omega, i.k_prime, i.n_eff)
}

/// `∫∫ h |F|²` on the grid and on its every-other-node subgrid.
fn weighted_mass(model: &SourceModel, grid: &FrequencyGrid, raw: &RawSpectrum) -> Result<(f64, f64)> {
    let c = &model.config;
    let ts = raw.tables.get(c.signal_mode, grid.center.0)?;
    let ti = raw.tables.get(c.idler_mode, grid.center.1)?;
    let hs = h_axis(ts, &grid.signal_axis);
    let hi = h_axis(ti, &grid.idler_axis);
    let (mut full, mut half) = (0.0, 0.0);
    for (j, &h_s) in hs.iter().enumerate() {
        for (k, &h_i) in hi.iter().enumerate() {
            let v = h_s * h_i * raw.amplitude[(j, k)].norm_sqr();
            full += v;
            if j % 2 == 0 && k % 2 == 0 {
                half += v;
            }
        }
    }
    let area = grid.cell_area();
    Ok((full * area, half * 4.0 * area))
}

fn numeric_result(model: &SourceModel, prefactor: f64, masses: (f64, f64), nodes: usize) -> Result<BrightnessResult> {
    let (full, half) = masses;
    let residual = if full > 0.0 {
        (full - half).abs() / full
    } else {
        0.0
    };
    if residual > BRIGHTNESS_TOLERANCE {
        return Err(Error::NonConvergent {
            what: "pair-rate grid sum",
            residual,
            nodes,
        });
    }
    Ok(BrightnessResult {
        pairs_per_second: prefactor * full,
        method: BrightnessMethod::Numeric,
        residual: Some(residual),
        config: model.config,
    })
}

/// Pulsed-pump pair rate from the directly integrated amplitude,
/// `2⁵ n1 n2 c² L² γ² p1 p2 / (π³ ω1 ω2 σ1 σ2 R) ∫∫ h |F|²`.
pub fn brightness_pulsed_numeric(model: &SourceModel, grid: &FrequencyGrid) -> Result<BrightnessResult> {
    brightness_pulsed_numeric_with(model, grid, QuadratureOptions::default())
}

pub fn brightness_pulsed_numeric_with(
    model: &SourceModel,
    grid: &FrequencyGrid,
    options: QuadratureOptions,
) -> Result<BrightnessResult> {
    let raw = pulsed_raw(model, grid, options)?;
    let (s1, s2) = model.sigmas();
    let l = model.length();
    let prefactor = 32.0 * common_factor(model)? * l * l
        / (PI * PI * PI * s1 * s2 * model.config.rep_rate);
    let masses = weighted_mass(model, grid, &raw)?;
    numeric_result(model, prefactor, masses, grid.signal_len().max(grid.idler_len()))
}

/// Pulsed-pump pair rate in the linear-mismatch approximation,
/// `2⁵ n1 n2 c² γ² p1 p2 h / (R (k1′+k2′)|ks′+ki′| ω1 ω2)
/// [erf((1+Λ)/(2√2 B)) + erf((1−Λ)/(2√2 B))]`.
pub fn brightness_pulsed_closed(model: &SourceModel) -> Result<BrightnessResult> {
    if model.config.scheme()? != PumpScheme::Pulsed {
        return Err(Error::UnsupportedConfiguration(
            "pulsed pair rate needs two pulsed pumps",
        ));
    }
    let tp = model.temporal_params();
    let b = tp.b.ok_or(Error::UnsupportedConfiguration("B is undefined"))?;
    let arg = 2.0 * SQRT_2 * b;
    let bracket = libm::erf((1.0 + tp.lambda) / arg) + libm::erf((1.0 - tp.lambda) / arg);
    let slowness_si = (model.signal.k_prime + model.idler.k_prime).abs();
    let n = 32.0 * common_factor(model)? * h_centre(model) * bracket
        / (model.config.rep_rate * model.slowness_sum() * slowness_si);
    Ok(BrightnessResult {
        pairs_per_second: n,
        method: BrightnessMethod::ClosedForm,
        residual: None,
        config: model.config,
    })
}

/// Mixed-pump pair rate, `2^{11/2} n1 n2 c² L² γ² p1 p2 / (π^{3/2} ω1 ω2 σ)
/// ∫∫ h |F_M|²`.
pub fn brightness_mixed_numeric(model: &SourceModel, grid: &FrequencyGrid) -> Result<BrightnessResult> {
    let raw = mixed_raw(model, grid)?;
    let l = model.length();
    let sigma = model.config.pump1.sigma;
    let prefactor = libm::pow(2.0, 5.5) * common_factor(model)? * l * l
        / (libm::pow(PI, 1.5) * sigma);
    let masses = weighted_mass(model, grid, &raw)?;
    numeric_result(model, prefactor, masses, grid.signal_len().max(grid.idler_len()))
}

/// Mixed-pump pair rate in the linear-mismatch approximation,
/// `2⁶ n1 n2 c² γ² p1 p2 L h / (ω1 ω2 |ks′ + ki′|)`; linear in `L`.
pub fn brightness_mixed_closed(model: &SourceModel) -> Result<BrightnessResult> {
    if model.config.scheme()? != PumpScheme::Mixed {
        return Err(Error::UnsupportedConfiguration(
            "mixed pair rate needs a monochromatic pump 2",
        ));
    }
    let slowness_si = (model.signal.k_prime + model.idler.k_prime).abs();
    let n = 64.0 * common_factor(model)? * model.length() * h_centre(model) / slowness_si;
    Ok(BrightnessResult {
        pairs_per_second: n,
        method: BrightnessMethod::ClosedForm,
        residual: None,
        config: model.config,
    })
}
