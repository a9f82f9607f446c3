use crate::constants::{FACTORABLE_B, SINC_GAUSSIAN_GAMMA};
use crate::source::{PumpScheme, SourceModel};
use crate::{Error, Result};

fn require(model: &SourceModel, scheme: PumpScheme) -> Result<()> {
    if model.config.scheme()? != scheme {
        return Err(Error::UnsupportedConfiguration(match scheme {
            PumpScheme::Pulsed => "formula applies to two pulsed pumps",
            PumpScheme::Mixed => "formula applies to a monochromatic pump 2",
        }));
    }
    Ok(())
}

/// Maximum interaction length of two pulsed pumps,
/// `4√2 √(σ1² + σ2²) / [(1 + Λ)(k1′ + k2′) σ1 σ2]`.
pub fn effective_length(model: &SourceModel) -> Result<f64> {
    require(model, PumpScheme::Pulsed)?;
    let lambda = model.temporal_params().lambda;
    if lambda <= -1.0 {
        return Err(Error::invalid("tau", "Λ ≤ −1 leaves no pump overlap"));
    }
    let (s1, s2) = model.sigmas();
    Ok(4.0 * core::f64::consts::SQRT_2 * libm::sqrt(s1 * s1 + s2 * s2)
        / ((1.0 + lambda) * model.slowness_sum() * s1 * s2))
}

/// Length beyond which two pulsed pumps give a factorable state,
/// `√(σ1² + σ2²) / (0.14 (k1′ + k2′) σ1 σ2)`.
pub fn factorability_threshold_pulsed(model: &SourceModel) -> Result<f64> {
    require(model, PumpScheme::Pulsed)?;
    let (s1, s2) = model.sigmas();
    Ok(libm::sqrt(s1 * s1 + s2 * s2) / (FACTORABLE_B * model.slowness_sum() * s1 * s2))
}

/// Factorability length with a monochromatic pump 2, `2/(σ √Γ (k1′ + k2′))`.
pub fn factorability_threshold_mixed(model: &SourceModel) -> Result<f64> {
    require(model, PumpScheme::Mixed)?;
    let sigma = model.config.pump1.sigma;
    Ok(2.0 / (sigma * libm::sqrt(SINC_GAUSSIAN_GAMMA) * model.slowness_sum()))
}

/// Idler bandwidth `σ_i = 2/(√Γ L (k1′ + k2′))` with a monochromatic pump 2,
/// in the `exp(−2ν²/σ²)` convention (FWHM = σ √(2 ln 2)).
pub fn idler_bandwidth(model: &SourceModel) -> Result<f64> {
    require(model, PumpScheme::Mixed)?;
    Ok(2.0 / (libm::sqrt(SINC_GAUSSIAN_GAMMA) * model.length() * model.slowness_sum()))
}

/// Fiber length giving idler bandwidth `delta_omega` (same convention as
/// [`idler_bandwidth`]).
pub fn length_for_bandwidth(model: &SourceModel, delta_omega: f64) -> Result<f64> {
    require(model, PumpScheme::Mixed)?;
    if !(delta_omega > 0.0 && delta_omega.is_finite()) {
        return Err(Error::invalid("delta_omega", "must be positive"));
    }
    Ok(2.0 / (libm::sqrt(SINC_GAUSSIAN_GAMMA) * delta_omega * model.slowness_sum()))
}
