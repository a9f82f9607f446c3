use cpsfwm_core::constants::FWHM_PER_SIGMA;
use cpsfwm_core::dispersion::{sample, FiberSpec, ModeId};
use cpsfwm_core::jsa::{
    effective_widths, jsa_mixed, jsa_mixed_linear, jsa_pulsed_linear, jsa_pulsed_numeric_with, FrequencyGrid,
    JointSpectrum, QuadratureOptions,
};
use cpsfwm_core::metrics::{
    brightness_grid, brightness_mixed_closed, brightness_mixed_numeric, brightness_pulsed_closed,
    brightness_pulsed_numeric_with, idler_bandwidth, intermodal_offsets, marginal_fwhm,
    purity_with_refinement, Axis, BrightnessResult, BRIGHTNESS_NODES,
};
use cpsfwm_core::constants::omega_from_wavelength;
use cpsfwm_core::source::{PumpScheme, SourceConfig, SourceModel};
use serde::Serialize;

use crate::config::{Method, Settings};
use crate::output::{Cell, OutputDir, Table};
use crate::CliError;

pub fn quadrature(settings: &Settings) -> QuadratureOptions {
    QuadratureOptions {
        initial_nodes: settings.quad,
        ..QuadratureOptions::default()
    }
}

/// JSA grid. Pulsed sources with comparable marginal widths share one step
/// on both axes, which enables the fast lattice path; strongly anisotropic
/// and mixed sources get independent steps.
pub fn jsa_grid(model: &SourceModel, n: usize) -> Result<FrequencyGrid, CliError> {
    let comparable = |(ws, wi): (f64, f64)| ws.max(wi) <= 4.0 * ws.min(wi);
    Ok(match model.config.scheme()? {
        PumpScheme::Pulsed if comparable(effective_widths(model)?) => {
            FrequencyGrid::common_spacing(model, n)?
        }
        _ => FrequencyGrid::default_for(model, n)?,
    })
}

pub fn spectrum(
    model: &SourceModel,
    grid: &FrequencyGrid,
    method: Method,
    options: QuadratureOptions,
) -> Result<JointSpectrum, CliError> {
    Ok(match (model.config.scheme()?, method) {
        (PumpScheme::Pulsed, Method::Numeric) => jsa_pulsed_numeric_with(model, grid, options)?,
        (PumpScheme::Pulsed, Method::Linear) => jsa_pulsed_linear(model, grid)?,
        (PumpScheme::Mixed, Method::Numeric) => jsa_mixed(model, grid)?,
        (PumpScheme::Mixed, Method::Linear) => jsa_mixed_linear(model, grid)?,
    })
}

pub fn dispersion(settings: &Settings, out: &mut OutputDir) -> Result<(), CliError> {
    let scan = &settings.dispersion;
    let fiber = &settings.source.fiber;
    let mut table = Table::new(&[
        "wavelength_m",
        "omega_rad_s",
        "n_eff",
        "k_rad_per_m",
        "k_prime_s_per_m",
    ]);
    for lambda in scan.wavelengths() {
        let s = sample(fiber, scan.mode, omega_from_wavelength(lambda))?;
        table.push_nums(&[lambda, s.omega, s.n_eff, s.k, s.k_prime]);
    }
    out.write_table("dispersion", &table)
}

pub fn jsi_table(f: &JointSpectrum) -> Table {
    let g = &f.grid;
    let mut table = Table::new(&[
        "signal_detuning_rad_s",
        "idler_detuning_rad_s",
        "signal_omega_rad_s",
        "idler_omega_rad_s",
        "intensity",
        "magnitude",
        "phase_rad",
    ]);
    for j in 0..g.signal_len() {
        for k in 0..g.idler_len() {
            let z = f.amplitude[(j, k)];
            table.push_nums(&[
                g.signal_detuning(j),
                g.idler_detuning(k),
                g.signal_axis[j],
                g.idler_axis[k],
                z.norm_sqr(),
                z.norm(),
                z.arg(),
            ]);
        }
    }
    table
}

#[derive(Serialize)]
struct JsaMetadata<'a> {
    method: Method,
    scheme: PumpScheme,
    grid: &'a FrequencyGrid,
    raw_mass: f64,
    quadrature_residual: Option<f64>,
    quadrature_nodes: Option<usize>,
    config: &'a SourceConfig,
}

pub fn jsa(settings: &Settings, method: Method, out: &mut OutputDir) -> Result<(), CliError> {
    let model = SourceModel::new(&settings.source)?;
    let grid = jsa_grid(&model, settings.grid)?;
    let f = spectrum(&model, &grid, method, quadrature(settings))?;
    out.write_table("jsi", &jsi_table(&f))?;
    if let Some(r) = f.residual {
        out.residual("quadrature", r);
    }
    out.write_json(
        "jsa_metadata.json",
        &JsaMetadata {
            method,
            scheme: model.config.scheme()?,
            grid: &f.grid,
            raw_mass: f.raw_mass,
            quadrature_residual: f.residual,
            quadrature_nodes: f.quadrature_nodes,
            config: &settings.source,
        },
    )
}

#[derive(Serialize)]
struct PurityRecord<'a> {
    method: Method,
    grid_nodes: usize,
    #[serde(flatten)]
    result: cpsfwm_core::metrics::SchmidtResult,
    config: &'a SourceConfig,
}

pub fn purity(settings: &Settings, method: Method, out: &mut OutputDir) -> Result<(), CliError> {
    let model = SourceModel::new(&settings.source)?;
    let grid = jsa_grid(&model, settings.grid)?;
    let options = quadrature(settings);
    let coarse = spectrum(&model, &grid, method, options)?;
    let fine = spectrum(&model, &grid.refined(), method, options)?;
    let result = purity_with_refinement(&coarse, &fine)?;
    if let Some(d) = result.grid_delta {
        out.residual("grid_doubling_purity_delta", d);
    }
    if let Some(r) = coarse.residual {
        out.residual("quadrature", r);
    }
    out.write_json(
        "purity.json",
        &PurityRecord {
            method,
            grid_nodes: settings.grid,
            result,
            config: &settings.source,
        },
    )
}

/// Numeric and closed-form pair rates of one source.
pub fn pair_rates(model: &SourceModel, options: QuadratureOptions) -> Result<(BrightnessResult, BrightnessResult), CliError> {
    let grid = brightness_grid(model, BRIGHTNESS_NODES)?;
    Ok(match model.config.scheme()? {
        PumpScheme::Pulsed => (
            brightness_pulsed_numeric_with(model, &grid, options)?,
            brightness_pulsed_closed(model)?,
        ),
        PumpScheme::Mixed => (brightness_mixed_numeric(model, &grid)?, brightness_mixed_closed(model)?),
    })
}

pub fn brightness_table(source: &SourceConfig, lengths: &[f64], options: QuadratureOptions) -> Result<(Table, f64), CliError> {
    let mut table = Table::new(&[
        "length_m",
        "pairs_numeric_1/s",
        "pairs_closed_form_1/s",
        "numeric_residual",
    ]);
    let mut worst: f64 = 0.0;
    for &l in lengths {
        let model = SourceModel::new(&source.with_length(l))?;
        let (numeric, closed) = pair_rates(&model, options)?;
        let r = numeric.residual.unwrap_or(0.0);
        worst = worst.max(r);
        table.push_nums(&[l, numeric.pairs_per_second, closed.pairs_per_second, r]);
    }
    Ok((table, worst))
}

pub fn brightness(settings: &Settings, out: &mut OutputDir) -> Result<(), CliError> {
    let (table, worst) = brightness_table(&settings.source, &settings.lengths_m, quadrature(settings))?;
    out.residual("max_pair_rate_grid_change", worst);
    out.write_table("brightness", &table)
}

/// Marginal FWHMs, numeric and predicted. The prediction for the idler is
/// the fiber-limited width for mixed pumping and the pump-2 width for
/// pulsed pumping; the signal always inherits the pump-1 width.
pub fn bandwidth_row(model: &SourceModel, n: usize, method: Method, options: QuadratureOptions) -> Result<([f64; 4], JointSpectrum), CliError> {
    let grid = jsa_grid(model, n)?;
    let f = spectrum(model, &grid, method, options)?;
    let signal = marginal_fwhm(&f, Axis::Signal)?;
    let idler = marginal_fwhm(&f, Axis::Idler)?;
    let (s1, s2) = model.sigmas();
    let idler_closed = match model.config.scheme()? {
        PumpScheme::Mixed => idler_bandwidth(model)? * FWHM_PER_SIGMA,
        PumpScheme::Pulsed => s2 * FWHM_PER_SIGMA,
    };
    Ok(([signal, s1 * FWHM_PER_SIGMA, idler, idler_closed], f))
}

pub fn bandwidth(settings: &Settings, out: &mut OutputDir) -> Result<(), CliError> {
    let mut table = Table::new(&[
        "length_m",
        "signal_fwhm_numeric_rad_s",
        "signal_fwhm_closed_form_rad_s",
        "idler_fwhm_numeric_rad_s",
        "idler_fwhm_closed_form_rad_s",
    ]);
    let options = quadrature(settings);
    for &l in &settings.lengths_m {
        let model = SourceModel::new(&settings.source.with_length(l))?;
        let (row, _) = bandwidth_row(&model, settings.grid, settings.method, options)?;
        table.push_nums(&[l, row[0], row[1], row[2], row[3]]);
    }
    out.write_table("bandwidth", &table)
}

pub fn intermodal_table(
    fiber: &FiberSpec,
    lambda1: f64,
    lambda2: f64,
    modes: &[ModeId],
) -> Result<Table, CliError> {
    let mut table = Table::new(&[
        "mode",
        "lambda_s_m",
        "lambda_i_m",
        "dlambda_s_m",
        "dlambda_i_m",
        "delta_rad_s",
    ]);
    for &mode in modes {
        let r = intermodal_offsets(fiber, lambda1, lambda2, mode)?;
        let mut row = vec![Cell::Text(mode.to_string())];
        row.extend(
            [r.lambda_s, r.lambda_i, r.dlambda_s, r.dlambda_i, r.delta]
                .into_iter()
                .map(Cell::Num),
        );
        table.push(row);
    }
    Ok(table)
}

pub fn intermodal(settings: &Settings, out: &mut OutputDir) -> Result<(), CliError> {
    let s = &settings.source;
    let table = intermodal_table(
        &s.fiber,
        s.pump1.wavelength(),
        s.pump2.wavelength(),
        &settings.intermodal_modes,
    )?;
    out.write_table("intermodal", &table)
}
