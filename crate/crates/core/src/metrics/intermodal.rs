use crate::constants::{omega_from_wavelength, wavelength_from_omega};
use crate::dispersion::{FiberSpec, ModeId};
use crate::source::phasematching_offset;
use crate::Result;

/// Emission wavelengths when pump 1 and the idler travel in LP01 while
/// pump 2 and the signal travel in mode X.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IntermodalOffsets {
    pub mode: ModeId,
    /// Signal at `ω1 + δ`, idler at `ω2 − δ`; rad/s.
    pub delta: f64,
    pub lambda_s: f64,
    pub lambda_i: f64,
    /// `λ_s − λ1`.
    pub dlambda_s: f64,
    /// `λ_i − λ2`.
    pub dlambda_i: f64,
}

impl IntermodalOffsets {
    /// Angular-frequency offsets of signal and idler; equal and opposite.
    pub fn frequency_offsets(&self) -> (f64, f64) {
        (self.delta, -self.delta)
    }
}

pub fn intermodal_offsets(
    fiber: &FiberSpec,
    lambda1: f64,
    lambda2: f64,
    mode_x: ModeId,
) -> Result<IntermodalOffsets> {
    fiber.validate()?;
    let (w1, w2) = (omega_from_wavelength(lambda1), omega_from_wavelength(lambda2));
    let modes = [ModeId::LP01, mode_x, mode_x, ModeId::LP01];
    let delta = phasematching_offset(fiber, modes, w1, w2, 0.0)?;
    let (lambda_s, lambda_i) = if delta == 0.0 {
        (lambda1, lambda2)
    } else {
        (wavelength_from_omega(w1 + delta), wavelength_from_omega(w2 - delta))
    };
    Ok(IntermodalOffsets {
        mode: mode_x,
        delta,
        lambda_s,
        lambda_i,
        dlambda_s: lambda_s - lambda1,
        dlambda_i: lambda_i - lambda2,
    })
}
