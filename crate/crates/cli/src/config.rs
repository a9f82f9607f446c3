//! Experiment config files.
//!
//! A config is TOML with four sections. Every dimensioned key carries its
//! unit in the name; frequencies accept either a wavelength in nm or an
//! angular frequency in rad/s, and "THz" means 1e12 rad/s.
//!
//! ```toml
//! [fiber]
//! core_radius_um = 1.5
//! numerical_aperture = 0.13
//! length_m = 0.01
//!
//! [pump1]
//! wavelength_nm = 820.0      # or omega_rad_s
//! sigma_thz = 0.01           # or sigma_rad_s, fwhm_rad_s, fwhm_nm; 0 = monochromatic
//! power_w = 0.05
//! mode = "LP01"
//!
//! [pump2]
//! wavelength_nm = 532.0
//! sigma_thz = 0.03
//! power_w = 0.05
//!
//! [run]
//! rep_rate_hz = 80e6
//! grid = 257
//! length_sweep = { start_m = 1e-4, stop_m = 10.0, points = 25 }
//! ```

use std::path::Path;

use cpsfwm_core::constants::{omega_from_wavelength, FWHM_PER_SIGMA, SPEED_OF_LIGHT, THZ};
use cpsfwm_core::dispersion::{FiberSpec, ModeId};
use cpsfwm_core::jsa::GRID_NODES;
use cpsfwm_core::source::{PumpConfig, SourceConfig};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Numeric,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Log,
    Linear,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    fiber: FiberSection,
    pump1: PumpSection,
    pump2: PumpSection,
    #[serde(default)]
    run: RunSection,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FiberSection {
    core_radius_um: f64,
    numerical_aperture: f64,
    length_m: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PumpSection {
    wavelength_nm: Option<f64>,
    omega_rad_s: Option<f64>,
    sigma_rad_s: Option<f64>,
    sigma_thz: Option<f64>,
    fwhm_rad_s: Option<f64>,
    fwhm_nm: Option<f64>,
    power_w: f64,
    mode: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunSection {
    signal_mode: Option<String>,
    idler_mode: Option<String>,
    rep_rate_hz: Option<f64>,
    tau_s: Option<f64>,
    chi3_m2_per_v2: Option<f64>,
    nonlinear_phase: Option<bool>,
    grid: Option<usize>,
    quad: Option<usize>,
    method: Option<Method>,
    lengths_m: Option<Vec<f64>>,
    length_sweep: Option<SweepSection>,
    dispersion: Option<DispersionSection>,
    intermodal_modes: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepSection {
    start_m: f64,
    stop_m: f64,
    points: usize,
    #[serde(default)]
    spacing: Spacing,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DispersionSection {
    mode: Option<String>,
    lambda_min_nm: Option<f64>,
    lambda_max_nm: Option<f64>,
    points: Option<usize>,
}

/// Wavelength scan for the dispersion table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DispersionScan {
    pub mode: ModeId,
    pub lambda_min_m: f64,
    pub lambda_max_m: f64,
    pub points: usize,
}

impl DispersionScan {
    pub fn wavelengths(&self) -> Vec<f64> {
        let span = self.lambda_max_m - self.lambda_min_m;
        (0..self.points)
            .map(|j| self.lambda_min_m + span * j as f64 / (self.points - 1) as f64)
            .collect()
    }
}

/// Fully resolved settings in SI units. Hashing this, rather than the file
/// text, makes the config hash insensitive to formatting and comments.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Settings {
    pub source: SourceConfig,
    pub grid: usize,
    pub quad: usize,
    pub method: Method,
    pub lengths_m: Vec<f64>,
    pub dispersion: DispersionScan,
    pub intermodal_modes: Vec<ModeId>,
}

impl Settings {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let file: ConfigFile = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        resolve(file)
    }

    pub fn with_overrides(mut self, grid: Option<usize>, quad: Option<usize>) -> Result<Self, CliError> {
        if let Some(n) = grid {
            self.grid = n;
        }
        if let Some(n) = quad {
            self.quad = n;
        }
        check_grid(self.grid)?;
        if self.quad < 3 {
            return Err(CliError::Config("quad must be at least 3".into()));
        }
        Ok(self)
    }

    /// SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        hash_json(self)
    }
}

pub fn hash_json<T: Serialize>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("settings serialize");
    format!("{:x}", Sha256::digest(bytes))
}

pub fn check_grid(n: usize) -> Result<(), CliError> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(CliError::Config(format!("grid must be odd and at least 3, got {n}")));
    }
    Ok(())
}

fn mode(text: Option<&str>, default: ModeId) -> Result<ModeId, CliError> {
    match text {
        Some(s) => s.parse().map_err(|e: cpsfwm_core::Error| CliError::Config(e.to_string())),
        None => Ok(default),
    }
}

fn exactly_one(section: &str, what: &str, given: &[(&str, Option<f64>)]) -> Result<(usize, f64), CliError> {
    let set: Vec<_> = given.iter().enumerate().filter_map(|(i, (_, v))| v.map(|v| (i, v))).collect();
    match set.as_slice() {
        [one] => Ok(*one),
        _ => {
            let keys: Vec<_> = given.iter().map(|(k, _)| *k).collect();
            Err(CliError::Config(format!(
                "[{section}] needs exactly one {what} key out of {}",
                keys.join(", ")
            )))
        }
    }
}

fn pump(section: &str, p: &PumpSection) -> Result<PumpConfig, CliError> {
    let (which, value) = exactly_one(
        section,
        "frequency",
        &[("wavelength_nm", p.wavelength_nm), ("omega_rad_s", p.omega_rad_s)],
    )?;
    let omega = if which == 0 {
        omega_from_wavelength(value * 1e-9)
    } else {
        value
    };
    let (which, value) = exactly_one(
        section,
        "bandwidth",
        &[
            ("sigma_rad_s", p.sigma_rad_s),
            ("sigma_thz", p.sigma_thz),
            ("fwhm_rad_s", p.fwhm_rad_s),
            ("fwhm_nm", p.fwhm_nm),
        ],
    )?;
    let sigma = match which {
        0 => value,
        1 => value * THZ,
        2 => value / FWHM_PER_SIGMA,
        _ => {
            // Δω = ω² Δλ / (2πc)
            let fwhm = omega * omega * value * 1e-9 / (2.0 * std::f64::consts::PI * SPEED_OF_LIGHT);
            fwhm / FWHM_PER_SIGMA
        }
    };
    let mode = mode(p.mode.as_deref(), ModeId::LP01)?;
    PumpConfig::new(omega, sigma, p.power_w, mode).map_err(|e| CliError::Config(format!("[{section}] {e}")))
}

fn sweep(s: &SweepSection) -> Result<Vec<f64>, CliError> {
    let ok = s.start_m > 0.0 && s.stop_m > s.start_m && s.points >= 2 && s.stop_m.is_finite();
    if !ok {
        return Err(CliError::Config(
            "length_sweep needs 0 < start_m < stop_m and at least two points".into(),
        ));
    }
    let last = (s.points - 1) as f64;
    Ok((0..s.points)
        .map(|j| {
            let t = j as f64 / last;
            match s.spacing {
                Spacing::Log => s.start_m * (s.stop_m / s.start_m).powf(t),
                Spacing::Linear => s.start_m + (s.stop_m - s.start_m) * t,
            }
        })
        .collect())
}

pub fn log_sweep(start: f64, stop: f64, points: usize) -> Vec<f64> {
    sweep(&SweepSection {
        start_m: start,
        stop_m: stop,
        points,
        spacing: Spacing::Log,
    })
    .expect("valid built-in sweep")
}

fn resolve(file: ConfigFile) -> Result<Settings, CliError> {
    let f = &file.fiber;
    let fiber = FiberSpec::new(f.core_radius_um * 1e-6, f.numerical_aperture, f.length_m)
        .map_err(|e| CliError::Config(format!("[fiber] {e}")))?;
    let pump1 = pump("pump1", &file.pump1)?;
    let pump2 = pump("pump2", &file.pump2)?;
    let run = &file.run;

    let mut source = SourceConfig::new(fiber, pump1, pump2).with_modes(
        mode(run.signal_mode.as_deref(), pump1.mode)?,
        mode(run.idler_mode.as_deref(), pump2.mode)?,
    );
    if let Some(r) = run.rep_rate_hz {
        source.rep_rate = r;
    }
    if let Some(t) = run.tau_s {
        source.tau = t;
    }
    if let Some(c) = run.chi3_m2_per_v2 {
        source.chi3 = c;
    }
    if let Some(b) = run.nonlinear_phase {
        source.include_phi_nl = b;
    }
    source.validate().map_err(|e| CliError::Config(e.to_string()))?;

    let lengths_m = match (&run.lengths_m, &run.length_sweep) {
        (Some(_), Some(_)) => {
            return Err(CliError::Config(
                "give either run.lengths_m or run.length_sweep, not both".into(),
            ))
        }
        (Some(list), None) => {
            if list.is_empty() || list.iter().any(|l| !(l.is_finite() && *l > 0.0)) {
                return Err(CliError::Config("run.lengths_m must be positive".into()));
            }
            list.clone()
        }
        (None, Some(s)) => sweep(s)?,
        (None, None) => log_sweep(1e-4, 10.0, 26),
    };

    let scan = run.dispersion.as_ref();
    let dispersion = DispersionScan {
        mode: mode(scan.and_then(|d| d.mode.as_deref()), pump1.mode)?,
        lambda_min_m: scan.and_then(|d| d.lambda_min_nm).unwrap_or(400.0) * 1e-9,
        lambda_max_m: scan.and_then(|d| d.lambda_max_nm).unwrap_or(1000.0) * 1e-9,
        points: scan.and_then(|d| d.points).unwrap_or(601),
    };
    if !(dispersion.lambda_min_m > 0.0 && dispersion.lambda_max_m > dispersion.lambda_min_m)
        || dispersion.points < 2
    {
        return Err(CliError::Config(
            "run.dispersion needs 0 < lambda_min_nm < lambda_max_nm and two or more points".into(),
        ));
    }

    let intermodal_modes = match &run.intermodal_modes {
        Some(list) => list
            .iter()
            .map(|s| mode(Some(s), ModeId::LP01))
            .collect::<Result<_, _>>()?,
        None => vec![ModeId::LP11, ModeId::LP21, ModeId::LP02],
    };

    Settings {
        source,
        grid: run.grid.unwrap_or(GRID_NODES),
        quad: run.quad.unwrap_or(129),
        method: run.method.unwrap_or(Method::Numeric),
        lengths_m,
        dispersion,
        intermodal_modes,
    }
    .with_overrides(None, None)
}
