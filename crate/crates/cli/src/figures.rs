//! Built-in configurations and data sets behind each published figure and
//! the mode table.

use cpsfwm_core::constants::{omega_from_wavelength, FWHM_PER_SIGMA, SPEED_OF_LIGHT, THZ};
use cpsfwm_core::dispersion::{FiberSpec, ModeId};
use cpsfwm_core::jsa::{phi_p, JointSpectrum, QuadratureOptions};
use cpsfwm_core::metrics::{
    brightness_pulsed_closed, effective_length, factorability_threshold_mixed, purity,
};
use cpsfwm_core::numerics::sinc;
use cpsfwm_core::source::{PumpConfig, PumpScheme, SourceConfig, SourceModel};
use cpsfwm_core::Error;
use serde::Serialize;

use crate::commands::{bandwidth_row, brightness_table, intermodal_table, jsa_grid, jsi_table, spectrum};
use crate::config::{hash_json, log_sweep, Method};
use crate::output::{Cell, OutputDir, Table};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FigureId {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Table1,
}

/// Node count and inner quadrature shared by every figure.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FigureOptions {
    pub grid: usize,
    pub quad: usize,
}

impl FigureOptions {
    fn quadrature(&self) -> QuadratureOptions {
        QuadratureOptions {
            initial_nodes: self.quad,
            ..QuadratureOptions::default()
        }
    }
}

const POWER_W: f64 = 0.05;

fn thin_fiber(length: f64) -> FiberSpec {
    FiberSpec::new(1.5e-6, 0.13, length).expect("valid fiber")
}

fn pulsed(sigma1: f64, sigma2: f64, length: f64) -> SourceConfig {
    let p1 = PumpConfig::new(omega_from_wavelength(820e-9), sigma1, POWER_W, ModeId::LP01);
    let p2 = PumpConfig::new(omega_from_wavelength(532e-9), sigma2, POWER_W, ModeId::LP01);
    SourceConfig::new(thin_fiber(length), p1.expect("valid pump"), p2.expect("valid pump"))
}

fn mixed(sigma: f64, length: f64) -> SourceConfig {
    pulsed(sigma, 0.0, length)
}

/// 0.42 nm FWHM around 820 nm.
fn narrowband_sigma() -> f64 {
    let lambda: f64 = 820e-9;
    2.0 * std::f64::consts::PI * SPEED_OF_LIGHT * 0.42e-9 / (lambda * lambda) / FWHM_PER_SIGMA
}

pub fn run(id: FigureId, options: FigureOptions, out: &mut OutputDir) -> Result<String, CliError> {
    match id {
        FigureId::Fig2 => fig2(out),
        FigureId::Fig3 => fig3(options, out),
        FigureId::Fig4 => fig4(options, out),
        FigureId::Fig5 => fig5(options, out),
        FigureId::Fig6 => fig6(options, out),
        FigureId::Table1 => table1(out),
    }
}

fn fig2(out: &mut OutputDir) -> Result<String, CliError> {
    let model = SourceModel::new(&pulsed(0.01 * THZ, 0.03 * THZ, 0.01))?;
    let lambda = model.temporal_params().lambda;
    for (stem, b) in [("fig2_b0.01", 0.01_f64), ("fig2_b0.2", 0.2), ("fig2_b1", 1.0)] {
        let x_max = (3.0 / b).max(40.0);
        let peak = phi_p(0.0, b, lambda)?.norm();
        let mut table = Table::new(&["x", "phi_abs_normalized", "gaussian_limit", "sinc_limit"]);
        for j in 0..=800 {
            let x = x_max * (j as f64 / 400.0 - 1.0);
            let phi = phi_p(x, b, lambda)?.norm() / peak;
            table.push_nums(&[x, phi, (-b * b * x * x).exp(), sinc(0.5 * x).abs()]);
        }
        out.write_table(stem, &table)?;
    }
    Ok(hash_json(&("fig2", lambda)))
}

/// Pump envelope and phasematching magnitude of the linear model on a grid.
fn factor_table(model: &SourceModel, linear: &JointSpectrum, numeric: &JointSpectrum) -> Result<Table, CliError> {
    let tp = model.temporal_params();
    let (s1, s2) = model.sigmas();
    let g = &linear.grid;
    let peak_lin = linear.intensity_peak();
    let peak_num = numeric.intensity_peak();
    let mut table = Table::new(&[
        "signal_detuning_rad_s",
        "idler_detuning_rad_s",
        "pump_envelope",
        "phasematching_abs",
        "jsi_linear_normalized",
        "jsi_numeric_normalized",
    ]);
    let scheme = model.config.scheme()?;
    let b = tp.b.unwrap_or(f64::NAN);
    let phi0 = match scheme {
        PumpScheme::Pulsed => phi_p(0.0, b, tp.lambda)?.norm(),
        PumpScheme::Mixed => 1.0,
    };
    for j in 0..g.signal_len() {
        for k in 0..g.idler_len() {
            let (vs, vi) = (g.signal_detuning(j), g.idler_detuning(k));
            let sum = vs + vi;
            let (alpha, phi) = match scheme {
                PumpScheme::Pulsed => (
                    (-sum * sum / (s1 * s1 + s2 * s2)).exp(),
                    phi_p(tp.ts * vs + tp.ti * vi, b, tp.lambda)?.norm() / phi0,
                ),
                PumpScheme::Mixed => (
                    (-sum * sum / (s1 * s1)).exp(),
                    sinc(0.5 * (tp.tau1s * vs + tp.t1i * vi)).abs(),
                ),
            };
            table.push_nums(&[
                vs,
                vi,
                alpha,
                phi,
                linear.amplitude[(j, k)].norm_sqr() / peak_lin,
                numeric.amplitude[(j, k)].norm_sqr() / peak_num,
            ]);
        }
    }
    Ok(table)
}

trait IntensityPeak {
    fn intensity_peak(&self) -> f64;
}

impl IntensityPeak for JointSpectrum {
    fn intensity_peak(&self) -> f64 {
        let (j, k) = self.peak();
        self.amplitude[(j, k)].norm_sqr()
    }
}

fn fig3(options: FigureOptions, out: &mut OutputDir) -> Result<String, CliError> {
    let configs = [
        ("fig3_a-d", pulsed(0.01 * THZ, 0.03 * THZ, 0.01)),
        ("fig3_e-h", pulsed(0.01 * THZ, 0.01 * THZ, 0.01)),
        ("fig3_i-l", mixed(0.01 * THZ, 0.01)),
    ];
    for (stem, config) in &configs {
        let model = SourceModel::new(config)?;
        let grid = jsa_grid(&model, options.grid)?;
        let linear = spectrum(&model, &grid, Method::Linear, options.quadrature())?;
        let numeric = spectrum(&model, &grid, Method::Numeric, options.quadrature())?;
        out.write_table(stem, &factor_table(&model, &linear, &numeric)?)?;
        out.residual(format!("{stem}_overlap_defect"), 1.0 - linear.overlap(&numeric)?);
        if let Some(r) = numeric.residual {
            out.residual(format!("{stem}_quadrature"), r);
        }
    }
    Ok(hash_json(&("fig3", configs.map(|c| c.1), options)))
}

fn fig4(options: FigureOptions, out: &mut OutputDir) -> Result<String, CliError> {
    let panels = [
        ("fig4_a", pulsed(THZ, THZ, 0.01)),
        ("fig4_b", pulsed(THZ, 0.05 * THZ, 0.01)),
        ("fig4_c", pulsed(THZ, 0.005 * THZ, 0.01)),
        ("fig4_d", mixed(THZ, 0.01)),
    ];
    let mut marks = Table::new(&["panel", "scheme", "reference_length_m"]);
    for (stem, config) in &panels {
        let model = SourceModel::new(config)?;
        // effective length for pulsed pumps, factorability threshold for mixed
        let (scheme, reference) = match model.config.scheme()? {
            PumpScheme::Pulsed => ("pulsed", effective_length(&model)?),
            PumpScheme::Mixed => ("mixed", factorability_threshold_mixed(&model)?),
        };
        let lengths = log_sweep(0.1 * reference, 100.0 * reference, 19);
        let (table, worst) = brightness_table(config, &lengths, options.quadrature())?;
        out.write_table(stem, &table)?;
        out.residual(format!("{stem}_max_pair_rate_grid_change"), worst);
        marks.push(vec![
            Cell::Text(stem.to_string()),
            Cell::Text(scheme.into()),
            Cell::Num(reference),
        ]);
    }
    out.write_table("fig4_reference_lengths", &marks)?;
    Ok(hash_json(&("fig4", panels.map(|p| p.1), options)))
}

/// Purity from the directly integrated amplitude, falling back to the
/// linearized one when the inner quadrature would need more than 4097
/// nodes (long fibers with broadband pumps, deep in the factorable regime).
fn purity_point(model: &SourceModel, options: FigureOptions) -> Result<(f64, Method), CliError> {
    let grid = jsa_grid(model, options.grid)?;
    let quad = QuadratureOptions {
        max_nodes: 4097,
        ..options.quadrature()
    };
    let (f, method) = match spectrum(model, &grid, Method::Numeric, quad) {
        Ok(f) => (f, Method::Numeric),
        Err(CliError::Core(Error::NonConvergent { .. })) => {
            (spectrum(model, &grid, Method::Linear, quad)?, Method::Linear)
        }
        Err(e) => return Err(e),
    };
    Ok((purity(&f)?.purity, method))
}

pub const FIG5_LENGTHS_M: [f64; 4] = [1e-3, 1e-2, 1e-1, 1.0];

fn method_name(m: Method) -> String {
    match m {
        Method::Numeric => "numeric".into(),
        Method::Linear => "linear".into(),
    }
}

fn fig5(options: FigureOptions, out: &mut OutputDir) -> Result<String, CliError> {
    let sigma2s = log_sweep(1e-3 * THZ, 10.0 * THZ, 13);
    for (stem, sigma1) in [("fig5_sigma1_0.01thz", 0.01 * THZ), ("fig5_sigma1_1thz", THZ)] {
        let mut table = Table::new(&[
            "length_m",
            "sigma2_rad_s",
            "purity",
            "pairs_closed_form_1/s",
            "method",
        ]);
        let mut markers = Table::new(&["length_m", "purity", "method"]);
        for &l in &FIG5_LENGTHS_M {
            for &s2 in &sigma2s {
                let model = SourceModel::new(&pulsed(sigma1, s2, l))?;
                let (p, method) = purity_point(&model, options)?;
                let rate = brightness_pulsed_closed(&model)?.pairs_per_second;
                table.push(vec![
                    Cell::Num(l),
                    Cell::Num(s2),
                    Cell::Num(p),
                    Cell::Num(rate),
                    Cell::Text(method_name(method)),
                ]);
            }
            let model = SourceModel::new(&mixed(sigma1, l))?;
            let (p, method) = purity_point(&model, options)?;
            markers.push(vec![Cell::Num(l), Cell::Num(p), Cell::Text(method_name(method))]);
        }
        out.write_table(stem, &table)?;
        out.write_table(&format!("{stem}_mixed_markers"), &markers)?;
    }
    for (stem, s2) in [("fig5_e", 0.25), ("fig5_f", 1.0), ("fig5_g", 4.0)] {
        let model = SourceModel::new(&pulsed(THZ, s2 * THZ, 0.01))?;
        let grid = jsa_grid(&model, options.grid)?;
        let f = spectrum(&model, &grid, Method::Numeric, options.quadrature())?;
        out.residual(format!("{stem}_purity"), purity(&f)?.purity);
        out.write_table(stem, &jsi_table(&f))?;
    }
    Ok(hash_json(&("fig5", &sigma2s, FIG5_LENGTHS_M, options)))
}

fn fig6(options: FigureOptions, out: &mut OutputDir) -> Result<String, CliError> {
    let config = mixed(narrowband_sigma(), 1.0);
    let mut bandwidth = Table::new(&[
        "length_m",
        "idler_fwhm_numeric_rad_s",
        "idler_fwhm_closed_form_rad_s",
        "signal_fwhm_numeric_rad_s",
    ]);
    for l in log_sweep(1.0, 100.0, 21) {
        let model = SourceModel::new(&config.with_length(l))?;
        let (row, _) = bandwidth_row(&model, options.grid, Method::Numeric, options.quadrature())?;
        bandwidth.push_nums(&[l, row[2], row[3], row[0]]);
    }
    out.write_table("fig6_a", &bandwidth)?;

    let threshold = factorability_threshold_mixed(&SourceModel::new(&config)?)?;
    let mut purity_table = Table::new(&["length_m", "purity"]);
    for l in log_sweep(1e-5, 100.0, 29) {
        let model = SourceModel::new(&config.with_length(l))?;
        let grid = jsa_grid(&model, options.grid)?;
        let f = spectrum(&model, &grid, Method::Numeric, options.quadrature())?;
        purity_table.push_nums(&[l, purity(&f)?.purity]);
    }
    out.write_table("fig6_b", &purity_table)?;
    out.residual("fig6_threshold_length_m", threshold);
    Ok(hash_json(&("fig6", config, options)))
}

fn table1(out: &mut OutputDir) -> Result<String, CliError> {
    let fiber = FiberSpec::new(2e-6, 0.3, 0.01)?;
    let modes = [ModeId::LP11, ModeId::LP21, ModeId::LP02];
    out.write_table("table1", &intermodal_table(&fiber, 820e-9, 532e-9, &modes)?)?;
    Ok(hash_json(&("table1", fiber, modes)))
}
