//! Material and waveguide dispersion of weakly guiding step-index fibers.
//!
//! The cladding follows a three-term Sellmeier law. The core index is
//! raised so that `NA² = n_core² − n_clad²` at every wavelength, i.e. the
//! numerical aperture is wavelength independent. Guided modes are LP modes
//! and are labelled by [`ModeId`].

mod modes;
mod profile;
mod table;

use core::fmt;

pub use modes::{
    characteristic_residual, cutoff_v, group_slowness, normalized_propagation_constant,
    propagation_constant, sample, solve_lp_modes, solve_lp_modes_with, v_number, GuidedMode,
    BRACKETS,
};
pub use profile::{mode_profile, overlap_four, overlap_self, overlap_two, ModeProfile};
pub use table::DispersionTable;

use crate::constants::{omega_from_wavelength, SPEED_OF_LIGHT};
use crate::{Error, Result};

/// Three-term Sellmeier law `n² = 1 + Σ B_j λ² / (λ² − C_j²)` with the
/// resonance wavelengths `C_j` in micrometres.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Sellmeier {
    pub strengths: [f64; 3],
    pub resonances_um: [f64; 3],
    /// Validity range in metres.
    pub min_wavelength: f64,
    pub max_wavelength: f64,
}

impl Sellmeier {
    /// Malitson's fit for fused silica at room temperature.
    pub const FUSED_SILICA: Sellmeier = Sellmeier {
        strengths: [0.696_166_3, 0.407_942_6, 0.897_479_4],
        resonances_um: [0.068_404_3, 0.116_241_4, 9.896_161],
        min_wavelength: 0.21e-6,
        max_wavelength: 3.7e-6,
    };

    /// Refractive index at a vacuum wavelength in metres.
    pub fn index(&self, wavelength: f64) -> Result<f64> {
        if !(wavelength >= self.min_wavelength && wavelength <= self.max_wavelength) {
            return Err(Error::WavelengthOutOfRange {
                wavelength_um: wavelength * 1e6,
                min_um: self.min_wavelength * 1e6,
                max_um: self.max_wavelength * 1e6,
            });
        }
        let l2 = (wavelength * 1e6) * (wavelength * 1e6);
        let mut n2 = 1.0;
        for (b, c) in self.strengths.iter().zip(&self.resonances_um) {
            n2 += b * l2 / (l2 - c * c);
        }
        Ok(libm::sqrt(n2))
    }
}

impl Default for Sellmeier {
    fn default() -> Self {
        Sellmeier::FUSED_SILICA
    }
}

/// Fused-silica refractive index at a vacuum wavelength in metres.
pub fn sellmeier_index(wavelength: f64) -> Result<f64> {
    Sellmeier::FUSED_SILICA.index(wavelength)
}

/// Step-index fiber geometry and material.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FiberSpec {
    /// Core radius in metres.
    pub core_radius: f64,
    pub numerical_aperture: f64,
    /// Fiber length in metres.
    pub length: f64,
    #[cfg_attr(feature = "serde", serde(default))]
    pub cladding: Sellmeier,
}

impl FiberSpec {
    pub fn new(core_radius: f64, numerical_aperture: f64, length: f64) -> Result<Self> {
        let fiber = FiberSpec {
            core_radius,
            numerical_aperture,
            length,
            cladding: Sellmeier::FUSED_SILICA,
        };
        fiber.validate()?;
        Ok(fiber)
    }

    pub fn with_cladding(mut self, cladding: Sellmeier) -> Self {
        self.cladding = cladding;
        self
    }

    pub fn with_length(mut self, length: f64) -> Self {
        self.length = length;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.core_radius.is_finite() && self.core_radius > 0.0) {
            return Err(Error::invalid("core_radius", "must be positive"));
        }
        if !(self.numerical_aperture > 0.0 && self.numerical_aperture < 1.0) {
            return Err(Error::invalid("numerical_aperture", "must lie in (0, 1)"));
        }
        if !(self.length.is_finite() && self.length > 0.0) {
            return Err(Error::invalid("length", "must be positive"));
        }
        let s = &self.cladding;
        if !(s.min_wavelength > 0.0 && s.min_wavelength < s.max_wavelength) {
            return Err(Error::invalid("cladding", "empty Sellmeier validity range"));
        }
        Ok(())
    }

    /// Cladding index at angular frequency `omega`.
    pub fn cladding_index(&self, omega: f64) -> Result<f64> {
        self.cladding.index(2.0 * core::f64::consts::PI * SPEED_OF_LIGHT / omega)
    }

    /// Core index at angular frequency `omega`.
    pub fn core_index(&self, omega: f64) -> Result<f64> {
        let n = self.cladding_index(omega)?;
        Ok(libm::sqrt(n * n + self.numerical_aperture * self.numerical_aperture))
    }

    /// Angular frequency range covered by the material model.
    pub fn omega_range(&self) -> (f64, f64) {
        (
            omega_from_wavelength(self.cladding.max_wavelength),
            omega_from_wavelength(self.cladding.min_wavelength),
        )
    }
}

/// LP mode label: azimuthal order `l`, radial order `m ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ModeId {
    pub l: u32,
    pub m: u32,
}

impl ModeId {
    pub const LP01: ModeId = ModeId { l: 0, m: 1 };
    pub const LP11: ModeId = ModeId { l: 1, m: 1 };
    pub const LP21: ModeId = ModeId { l: 2, m: 1 };
    pub const LP02: ModeId = ModeId { l: 0, m: 2 };

    pub fn new(l: u32, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("mode", "radial order starts at 1"));
        }
        Ok(ModeId { l, m })
    }
}

impl Default for ModeId {
    fn default() -> Self {
        ModeId::LP01
    }
}

impl fmt::Display for ModeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LP{}{}", self.l, self.m)
    }
}

impl core::str::FromStr for ModeId {
    type Err = Error;

    /// Accepts `LP01`, `lp11`, or `LP1,2` for orders above nine.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid("mode", alloc::format!("cannot parse `{s}` as an LP mode"));
        let rest = s
            .trim()
            .strip_prefix("LP")
            .or_else(|| s.trim().strip_prefix("lp"))
            .ok_or_else(bad)?;
        let (l, m) = match rest.split_once(',') {
            Some((l, m)) => (l.trim(), m.trim()),
            None if rest.len() == 2 && rest.is_char_boundary(1) => rest.split_at(1),
            None => return Err(bad()),
        };
        let l: u32 = l.parse().map_err(|_| bad())?;
        let m: u32 = m.parse().map_err(|_| bad())?;
        ModeId::new(l, m)
    }
}

/// Dispersion data of one mode at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DispersionSample {
    /// rad/s
    pub omega: f64,
    /// Propagation constant, rad/m.
    pub k: f64,
    /// Group slowness dk/dω, s/m.
    pub k_prime: f64,
    pub n_eff: f64,
}
