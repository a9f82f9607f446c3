use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::jsa::JointSpectrum;
use crate::{Error, Result};

/// Schmidt decomposition summary of a two-photon state.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SchmidtResult {
    /// `K = 1/p`.
    pub schmidt_number: f64,
    pub purity: f64,
    /// Descending, scaled so that their squares sum to one.
    pub singular_values: Vec<f64>,
    /// `|p(fine) − p(coarse)|` when a refinement pair was evaluated.
    pub grid_delta: Option<f64>,
}

impl SchmidtResult {
    /// Schmidt weights `λ_n`, the squared singular values.
    pub fn weights(&self) -> impl Iterator<Item = f64> + '_ {
        self.singular_values.iter().map(|s| s * s)
    }
}

/// Heralded single-photon purity `p = Σ λ_n²` from the singular values of
/// the sampled amplitude scaled by the grid cell area.
pub fn purity(spectrum: &JointSpectrum) -> Result<SchmidtResult> {
    let scale = libm::sqrt(spectrum.grid.cell_area());
    let m: DMatrix<Complex64> = spectrum.amplitude.map(|z| z * scale);
    if m.iter().all(|z| z.norm_sqr() == 0.0) {
        return Err(Error::DegenerateSpectrum);
    }
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let total: f64 = sv.iter().map(|s| s * s).sum();
    if !(total > 0.0) || !total.is_finite() {
        return Err(Error::DegenerateSpectrum);
    }
    let norm = libm::sqrt(total);
    sv.iter_mut().for_each(|s| *s /= norm);
    let p: f64 = sv.iter().map(|s| (s * s) * (s * s)).sum();
    Ok(SchmidtResult {
        schmidt_number: 1.0 / p,
        purity: p,
        singular_values: sv,
        grid_delta: None,
    })
}

/// Purity of `fine`, with the change from `coarse` recorded as an error bar.
pub fn purity_with_refinement(
    coarse: &JointSpectrum,
    fine: &JointSpectrum,
) -> Result<SchmidtResult> {
    let c = purity(coarse)?;
    let mut f = purity(fine)?;
    f.grid_delta = Some((f.purity - c.purity).abs());
    Ok(f)
}
