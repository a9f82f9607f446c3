use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{FrequencyGrid, JointSpectrum};
use crate::numerics::{scaled_erf, sinc};
use crate::source::{PumpScheme, SourceModel};
use crate::{Error, Result};

/// Phasematching function of the linearized pulsed amplitude,
/// `exp(−B²x²)[erf((1+Λ)/(4B) + iBx) + erf((1−Λ)/(4B) − iBx)]`.
pub fn phi_p(x: f64, b: f64, lambda: f64) -> Result<Complex64> {
    if !(b > 0.0 && b.is_finite()) {
        return Err(Error::invalid("B", "must be positive and finite"));
    }
    if !(x.is_finite() && lambda.is_finite()) {
        return Err(Error::invalid("x", "must be finite"));
    }
    let y = b * x;
    Ok(scaled_erf((1.0 + lambda) / (4.0 * b), y) + scaled_erf((1.0 - lambda) / (4.0 * b), -y))
}

/// `α_P(ν_s, ν_i) φ_P(T_s ν_s + T_i ν_i)` with
/// `α_P = exp(−(ν_s + ν_i)²/(σ1² + σ2²))`, normalized.
pub fn jsa_pulsed_linear(model: &SourceModel, grid: &FrequencyGrid) -> Result<JointSpectrum> {
    if model.config.scheme()? != PumpScheme::Pulsed {
        return Err(Error::UnsupportedConfiguration(
            "pulsed linear amplitude needs two pulsed pumps",
        ));
    }
    let tp = model.temporal_params();
    let b = tp.b.ok_or(Error::UnsupportedConfiguration("B is undefined"))?;
    let (s1, s2) = model.sigmas();
    let sum_sq = s1 * s1 + s2 * s2;
    let mut failure = None;
    let amplitude = DMatrix::from_fn(grid.signal_len(), grid.idler_len(), |j, k| {
        let (vs, vi) = (grid.signal_detuning(j), grid.idler_detuning(k));
        let alpha = libm::exp(-(vs + vi) * (vs + vi) / sum_sq);
        match phi_p(tp.ts * vs + tp.ti * vi, b, tp.lambda) {
            Ok(phi) => phi * alpha,
            Err(e) => {
                failure.get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    JointSpectrum::from_amplitude(grid.clone(), amplitude)
}

/// `α_M(ν_s + ν_i) sinc[(τ_1s ν_s + t_1i ν_i)/2] e^{i(t_1s ν_s + t_1i ν_i)}`
/// with `α_M(ν) = exp(−ν²/σ1²)`, normalized.
pub fn jsa_mixed_linear(model: &SourceModel, grid: &FrequencyGrid) -> Result<JointSpectrum> {
    if model.config.scheme()? != PumpScheme::Mixed {
        return Err(Error::UnsupportedConfiguration(
            "mixed linear amplitude needs a monochromatic pump 2",
        ));
    }
    let tp = model.temporal_params();
    let sigma = model.config.pump1.sigma;
    let amplitude = DMatrix::from_fn(grid.signal_len(), grid.idler_len(), |j, k| {
        let (vs, vi) = (grid.signal_detuning(j), grid.idler_detuning(k));
        let alpha = libm::exp(-(vs + vi) * (vs + vi) / (sigma * sigma));
        let pm = sinc(0.5 * (tp.tau1s * vs + tp.t1i * vi));
        Complex64::from_polar(alpha * pm, tp.t1s * vs + tp.t1i * vi)
    });
    JointSpectrum::from_amplitude(grid.clone(), amplitude)
}
