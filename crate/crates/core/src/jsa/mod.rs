//! Joint spectral amplitudes on rectangular `(ω_s, ω_i)` grids.
//!
//! Two families of constructors are provided: direct evaluation of the
//! exact expressions (an integral over the pump 1 frequency for pulsed
//! pumps, a pointwise formula for mixed pumps) and the closed forms valid
//! when the phase mismatch is linearized around the carriers.
//!
//! Pump envelopes inside the unnormalized amplitudes have unit peak,
//! `exp(−ν²/σ²)`; [`JointSpectrum::raw_mass`] records the mass of that
//! unnormalized amplitude. Constant global phases are dropped throughout.

mod grid;
mod linear;
mod numeric;
mod tables;

use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

pub use grid::{conditional_widths, effective_widths, FrequencyGrid, GRID_NODES, GRID_SPAN_WIDTHS};
pub use linear::{jsa_mixed_linear, jsa_pulsed_linear, phi_p};
pub use numeric::{
    delta_k_mixed, delta_k_pulsed, jsa_mixed, jsa_pulsed_numeric, jsa_pulsed_numeric_with,
    kappa_mixed, kappa_pulsed, QuadratureOptions,
};
pub(crate) use numeric::{mixed_raw, pulsed_raw, RawSpectrum};
pub use tables::TableSet;

use crate::{Error, Result};

/// Sampled joint spectral amplitude; rows index the signal axis, columns
/// the idler axis.
#[derive(Debug, Clone, PartialEq)]
pub struct JointSpectrum {
    pub grid: FrequencyGrid,
    pub amplitude: DMatrix<Complex64>,
    /// `Σ|F|² Δω_s Δω_i = 1` holds.
    pub normalized: bool,
    /// `Σ|F|² Δω_s Δω_i` of the amplitude as constructed, before
    /// normalization.
    pub raw_mass: f64,
    /// Relative L2 change of the last quadrature doubling, when the
    /// constructor integrates numerically.
    pub residual: Option<f64>,
    /// Inner quadrature nodes used by a numerical constructor.
    pub quadrature_nodes: Option<usize>,
}

impl JointSpectrum {
    /// Wraps an amplitude matrix and normalizes it.
    pub fn from_amplitude(grid: FrequencyGrid, amplitude: DMatrix<Complex64>) -> Result<Self> {
        if amplitude.nrows() != grid.signal_len() || amplitude.ncols() != grid.idler_len() {
            return Err(Error::invalid("amplitude", "shape does not match the grid"));
        }
        if amplitude.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::invalid("amplitude", "non-finite entries"));
        }
        let mut spectrum = JointSpectrum {
            grid,
            amplitude,
            normalized: false,
            raw_mass: 0.0,
            residual: None,
            quadrature_nodes: None,
        };
        spectrum.raw_mass = spectrum.mass();
        spectrum.normalize()?;
        Ok(spectrum)
    }

    /// `Σ|F|² Δω_s Δω_i`.
    pub fn mass(&self) -> f64 {
        self.amplitude.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.grid.cell_area()
    }

    fn normalize(&mut self) -> Result<()> {
        let mass = self.mass();
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::DegenerateSpectrum);
        }
        let scale = 1.0 / libm::sqrt(mass);
        self.amplitude.iter_mut().for_each(|z| *z *= scale);
        self.normalized = true;
        Ok(())
    }

    pub fn intensity(&self, signal: usize, idler: usize) -> f64 {
        self.amplitude[(signal, idler)].norm_sqr()
    }

    /// `Σ_i |F|² Δω_i` for every signal node.
    pub fn signal_marginal(&self) -> Vec<f64> {
        let h = self.grid.idler_step;
        self.amplitude
            .row_iter()
            .map(|row| row.iter().map(|z| z.norm_sqr()).sum::<f64>() * h)
            .collect()
    }

    /// `Σ_s |F|² Δω_s` for every idler node.
    pub fn idler_marginal(&self) -> Vec<f64> {
        let h = self.grid.signal_step;
        self.amplitude
            .column_iter()
            .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>() * h)
            .collect()
    }

    /// Marginal of `|F|²` along `ν_s + ν_i`, binned by the anti-diagonal
    /// index; only meaningful for equal axis steps.
    pub fn sum_marginal(&self) -> Vec<(f64, f64)> {
        let (ns, ni) = (self.grid.signal_len(), self.grid.idler_len());
        let mut out: Vec<(f64, f64)> = (0..ns + ni - 1)
            .map(|t| (self.grid.sum_detuning(t), 0.0))
            .collect();
        for j in 0..ns {
            for k in 0..ni {
                out[j + k].1 += self.intensity(j, k);
            }
        }
        out
    }

    /// Normalized overlap of the magnitudes,
    /// `Σ|F1||F2| / √(Σ|F1|² Σ|F2|²)`, on a shared grid.
    pub fn overlap(&self, other: &JointSpectrum) -> Result<f64> {
        if self.amplitude.shape() != other.amplitude.shape() {
            return Err(Error::invalid("grid", "spectra are sampled on different grids"));
        }
        let (mut cross, mut a2, mut b2) = (0.0, 0.0, 0.0);
        for (a, b) in self.amplitude.iter().zip(other.amplitude.iter()) {
            let (a, b) = (a.norm(), b.norm());
            cross += a * b;
            a2 += a * a;
            b2 += b * b;
        }
        if a2 == 0.0 || b2 == 0.0 {
            return Err(Error::DegenerateSpectrum);
        }
        Ok(cross / libm::sqrt(a2 * b2))
    }

    /// Grid indices of the largest `|F|`.
    pub fn peak(&self) -> (usize, usize) {
        let mut best = (0, 0);
        let mut max = -1.0;
        for j in 0..self.amplitude.nrows() {
            for k in 0..self.amplitude.ncols() {
                let v = self.amplitude[(j, k)].norm_sqr();
                if v > max {
                    max = v;
                    best = (j, k);
                }
            }
        }
        best
    }

    /// Amplitude with the signal and idler roles exchanged.
    pub fn transposed(&self) -> JointSpectrum {
        JointSpectrum {
            grid: self.grid.transposed(),
            amplitude: self.amplitude.transpose(),
            ..self.clone()
        }
    }
}
