//! Observables and design formulas derived from a source or its joint
//! spectrum.

mod brightness;
mod intermodal;
mod lengths;
mod schmidt;

pub use brightness::{
    brightness_grid, brightness_mixed_closed, brightness_mixed_numeric, brightness_pulsed_closed,
    brightness_pulsed_numeric, brightness_pulsed_numeric_with, BrightnessMethod,
    BrightnessResult, BRIGHTNESS_MAX_NODES, BRIGHTNESS_NODES, BRIGHTNESS_SPAN_WIDTHS, BRIGHTNESS_TOLERANCE,
};
pub use intermodal::{intermodal_offsets, IntermodalOffsets};
pub use lengths::{
    effective_length, factorability_threshold_mixed, factorability_threshold_pulsed,
    idler_bandwidth, length_for_bandwidth,
};
pub use schmidt::{purity, purity_with_refinement, SchmidtResult};

use alloc::vec::Vec;

use crate::jsa::JointSpectrum;
use crate::{Error, Result};

/// Marginal axis of a joint spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Axis {
    Signal,
    Idler,
}

/// Full width at half maximum of a marginal intensity, rad/s.
///
/// Crossings are located by linear interpolation between the bracketing
/// samples. A flat top is centred on the midpoint of its plateau. A second
/// lobe reaching half maximum outside the main one is reported as
/// ambiguous.
pub fn marginal_fwhm(spectrum: &JointSpectrum, axis: Axis) -> Result<f64> {
    let (values, axis_values) = match axis {
        Axis::Signal => (spectrum.signal_marginal(), &spectrum.grid.signal_axis),
        Axis::Idler => (spectrum.idler_marginal(), &spectrum.grid.idler_axis),
    };
    // detunings keep the interpolation clear of the carrier magnitude
    let step = match axis {
        Axis::Signal => spectrum.grid.signal_step,
        Axis::Idler => spectrum.grid.idler_step,
    };
    let half = (values.len() / 2) as f64;
    let x: Vec<f64> = (0..axis_values.len()).map(|j| (j as f64 - half) * step).collect();
    fwhm(&x, &values)
}

/// FWHM of samples `y(x)` with a single dominant lobe.
pub fn fwhm(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() || x.len() < 3 {
        return Err(Error::invalid("samples", "need at least three paired samples"));
    }
    let peak = y.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(peak > 0.0) || !peak.is_finite() {
        return Err(Error::DegenerateSpectrum);
    }
    let tie = peak * (1.0 - 1e-12);
    let first = y.iter().position(|&v| v >= tie).unwrap();
    let last = y.iter().rposition(|&v| v >= tie).unwrap();
    let centre = (first + last) / 2;
    let half = 0.5 * peak;
    if y[first..=last].iter().any(|&v| v < half) {
        return Err(Error::AmbiguousMarginal("two separated peaks of equal height"));
    }
    let crossing = |step: isize| -> Result<(f64, usize)> {
        let mut i = centre;
        loop {
            let next = i as isize + step;
            if next < 0 || next as usize >= y.len() {
                return Err(Error::AmbiguousMarginal(
                    "half maximum not reached inside the grid",
                ));
            }
            let j = next as usize;
            if y[j] < half {
                let t = (y[i] - half) / (y[i] - y[j]);
                return Ok((x[i] + t * (x[j] - x[i]), j));
            }
            i = j;
        }
    };
    let (left, left_idx) = crossing(-1)?;
    let (right, right_idx) = crossing(1)?;
    let side_lobe = y[..left_idx]
        .iter()
        .chain(&y[right_idx + 1..])
        .any(|&v| v >= half);
    if side_lobe {
        return Err(Error::AmbiguousMarginal(
            "a secondary lobe exceeds half maximum",
        ));
    }
    Ok(right - left)
}
