//! Experiment description and the derived scalar parameters: transit
//! times, `B`, `Λ`, orientation angle, nonlinear coefficients and the
//! nonlinear phase.
//!
//! All bandwidths are angular frequencies in rad/s.

use core::f64::consts::PI;

use crate::constants::{
    wavelength_from_omega, CHI3_FUSED_SILICA, SPEED_OF_LIGHT, VACUUM_PERMITTIVITY,
};
use crate::dispersion::{
    group_slowness, overlap_four, overlap_self, overlap_two, propagation_constant,
    DispersionSample, FiberSpec, ModeId,
};
use crate::{Error, Result};

/// One pump wave.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PumpConfig {
    /// Central angular frequency, rad/s.
    pub omega0: f64,
    /// Angular bandwidth of the Gaussian envelope, rad/s; zero means
    /// monochromatic.
    pub sigma: f64,
    /// Average power, W (for a monochromatic pump, its power).
    pub avg_power: f64,
    pub mode: ModeId,
}

impl PumpConfig {
    pub fn new(omega0: f64, sigma: f64, avg_power: f64, mode: ModeId) -> Result<Self> {
        let p = PumpConfig {
            omega0,
            sigma,
            avg_power,
            mode,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega0.is_finite() && self.omega0 > 0.0) {
            return Err(Error::invalid("omega0", "must be positive"));
        }
        if !(self.sigma.is_finite() && self.sigma >= 0.0) {
            return Err(Error::invalid("sigma", "must be non-negative"));
        }
        if !(self.avg_power.is_finite() && self.avg_power >= 0.0) {
            return Err(Error::invalid("avg_power", "must be non-negative"));
        }
        Ok(())
    }

    pub fn is_pulsed(&self) -> bool {
        self.sigma > 0.0
    }

    pub fn wavelength(&self) -> f64 {
        wavelength_from_omega(self.omega0)
    }

    /// Peak power `p σ / (√(2π) R)` of a pulsed pump; the power itself for
    /// a monochromatic one.
    pub fn peak_power(&self, rep_rate: f64) -> f64 {
        if self.is_pulsed() {
            self.avg_power * self.sigma / (libm::sqrt(2.0 * PI) * rep_rate)
        } else {
            self.avg_power
        }
    }
}

/// Normalized Gaussian spectral envelope
/// `α(ω) = 2^{1/4} π^{-1/4} σ^{-1/2} exp(−(ω − ω0)²/σ²)`.
pub fn pump_envelope(pump: &PumpConfig, omega: f64) -> Result<f64> {
    if !pump.is_pulsed() {
        return Err(Error::UnsupportedConfiguration(
            "a monochromatic pump has no spectral envelope",
        ));
    }
    let nu = (omega - pump.omega0) / pump.sigma;
    Ok(libm::pow(2.0 / PI, 0.25) / libm::sqrt(pump.sigma) * libm::exp(-nu * nu))
}

/// Which pumps are pulsed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum PumpScheme {
    /// Both pumps pulsed.
    Pulsed,
    /// Pump 1 pulsed, pump 2 monochromatic.
    Mixed,
}

/// Complete source description.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SourceConfig {
    pub fiber: FiberSpec,
    /// Forward-propagating pump.
    pub pump1: PumpConfig,
    /// Backward-propagating pump.
    pub pump2: PumpConfig,
    /// Mode of the backward-propagating signal photon.
    pub signal_mode: ModeId,
    /// Mode of the forward-propagating idler photon.
    pub idler_mode: ModeId,
    /// Repetition rate, Hz.
    pub rep_rate: f64,
    /// Arrival-time difference of the two pump pulses at their fiber ends, s.
    pub tau: f64,
    /// Third-order susceptibility, m²/V².
    pub chi3: f64,
    /// Add the self/cross-phase-modulation term to the phase mismatch.
    pub include_phi_nl: bool,
}

impl SourceConfig {
    /// Source with the signal in the mode of pump 1 and the idler in the
    /// mode of pump 2, 80 MHz repetition rate, `τ = 0`, default `χ(3)` and no
    /// nonlinear phase.
    pub fn new(fiber: FiberSpec, pump1: PumpConfig, pump2: PumpConfig) -> Self {
        SourceConfig {
            fiber,
            pump1,
            pump2,
            signal_mode: pump1.mode,
            idler_mode: pump2.mode,
            rep_rate: 80e6,
            tau: 0.0,
            chi3: CHI3_FUSED_SILICA,
            include_phi_nl: false,
        }
    }

    pub fn with_modes(mut self, signal: ModeId, idler: ModeId) -> Self {
        self.signal_mode = signal;
        self.idler_mode = idler;
        self
    }

    pub fn with_length(mut self, length: f64) -> Self {
        self.fiber.length = length;
        self
    }

    pub fn with_tau(mut self, tau: f64) -> Self {
        self.tau = tau;
        self
    }

    pub fn with_sigmas(mut self, sigma1: f64, sigma2: f64) -> Self {
        self.pump1.sigma = sigma1;
        self.pump2.sigma = sigma2;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.fiber.validate()?;
        self.pump1.validate()?;
        self.pump2.validate()?;
        if (self.pump1.is_pulsed() || self.pump2.is_pulsed())
            && !(self.rep_rate.is_finite() && self.rep_rate > 0.0)
        {
            return Err(Error::invalid("rep_rate", "must be positive for pulsed pumps"));
        }
        if !self.tau.is_finite() {
            return Err(Error::invalid("tau", "must be finite"));
        }
        if !(self.chi3.is_finite() && self.chi3 >= 0.0) {
            return Err(Error::invalid("chi3", "must be non-negative"));
        }
        Ok(())
    }

    /// Pump scheme, or an error for configurations outside the model.
    pub fn scheme(&self) -> Result<PumpScheme> {
        match (self.pump1.is_pulsed(), self.pump2.is_pulsed()) {
            (true, true) => Ok(PumpScheme::Pulsed),
            (true, false) => Ok(PumpScheme::Mixed),
            (false, true) => Err(Error::UnsupportedConfiguration(
                "the monochromatic pump must be pump 2",
            )),
            (false, false) => Err(Error::UnsupportedConfiguration(
                "two monochromatic pumps are not modelled",
            )),
        }
    }

    /// Pump 2 peak power, with `P2 → p2` for a monochromatic pump.
    pub fn peak_powers(&self) -> (f64, f64) {
        (
            self.pump1.peak_power(self.rep_rate),
            self.pump2.peak_power(self.rep_rate),
        )
    }

    fn same_modes(&self) -> bool {
        self.signal_mode == self.pump1.mode && self.idler_mode == self.pump2.mode
    }
}

/// Transit-time parameters of the linearized joint spectrum (seconds),
/// together with `B` and `Λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TemporalParams {
    pub t12: f64,
    pub tau12: f64,
    pub t1s: f64,
    pub tau1s: f64,
    pub t1i: f64,
    pub tau1i: f64,
    pub t2s: f64,
    pub tau2s: f64,
    pub t2i: f64,
    pub tau2i: f64,
    pub ts: f64,
    pub ti: f64,
    /// `√(σ1² + σ2²)/(t12 σ1 σ2)`; absent unless both pumps are pulsed.
    pub b: Option<f64>,
    /// `(2τ + τ12)/t12`.
    pub lambda: f64,
}

/// Central frequencies and dispersion of the four waves, plus the
/// derived constants most computations need.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SourceModel {
    pub config: SourceConfig,
    pub pump1: DispersionSample,
    pub pump2: DispersionSample,
    pub signal: DispersionSample,
    pub idler: DispersionSample,
    /// Nonlinear phase included in the phase mismatch (zero when disabled).
    pub phi_nl: f64,
}

fn dispersion_sample(fiber: &FiberSpec, mode: ModeId, omega: f64) -> Result<DispersionSample> {
    let k = propagation_constant(fiber, mode, omega)?;
    let k_prime = group_slowness(fiber, mode, omega)?;
    Ok(DispersionSample {
        omega,
        k,
        k_prime,
        n_eff: k * SPEED_OF_LIGHT / omega,
    })
}

/// Relative step of the outward scan for the phasematching offset.
const OFFSET_SCAN_STEP: f64 = 1e-3;
/// Largest offset searched, as a fraction of the pump 2 frequency.
const OFFSET_SCAN_LIMIT: f64 = 0.15;

/// Frequency offset `δ` such that the signal at `ω1 + δ` and the idler at
/// `ω2 − δ` are phasematched at the pump carriers:
/// `k1(ω1) − k2(ω2) − ks(ω1 + δ) + ki(ω2 − δ) + Φ_NL = 0`.
///
/// The scan starts at `δ = 0` and walks outward in both directions,
/// skipping offsets where a wave is not guided; the root nearest to zero
/// is refined by bisection.
pub fn phasematching_offset(
    fiber: &FiberSpec,
    modes: [ModeId; 4],
    omega1: f64,
    omega2: f64,
    phi_nl: f64,
) -> Result<f64> {
    let [m1, m2, ms, mi] = modes;
    let k1 = propagation_constant(fiber, m1, omega1)?;
    let k2 = propagation_constant(fiber, m2, omega2)?;
    let f = |delta: f64| -> Result<f64> {
        let ks = propagation_constant(fiber, ms, omega1 + delta)?;
        let ki = propagation_constant(fiber, mi, omega2 - delta)?;
        Ok((k1 - ks) - (k2 - ki) + phi_nl)
    };
    let f0 = f(0.0);
    if let Ok(v) = f0 {
        if v == 0.0 {
            return Ok(0.0);
        }
    }
    let step = OFFSET_SCAN_STEP * omega2;
    let limit = OFFSET_SCAN_LIMIT * omega2;
    let steps = libm::round(limit / step) as usize;
    // last guided point on each side, (δ, f(δ))
    let mut sides: [Option<(f64, f64)>; 2] = match f0 {
        Ok(v) => [Some((0.0, v)), Some((0.0, v))],
        Err(_) => [None, None],
    };
    for j in 1..=steps {
        for (side, sign) in [(0usize, 1.0f64), (1, -1.0)] {
            let delta = sign * j as f64 * step;
            let Ok(v) = f(delta) else { continue };
            if v == 0.0 {
                return Ok(delta);
            }
            if let Some((d_prev, v_prev)) = sides[side] {
                if (v < 0.0) != (v_prev < 0.0) {
                    return refine(&f, d_prev, v_prev, delta);
                }
            }
            sides[side] = Some((delta, v));
        }
    }
    Err(Error::NoPhasematchingRoot { limit })
}

fn refine<F: Fn(f64) -> Result<f64>>(f: &F, mut a: f64, mut fa: f64, mut b: f64) -> Result<f64> {
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid == a || mid == b {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

impl SourceModel {
    /// Solves for the central frequencies and samples the dispersion of
    /// all four waves there.
    pub fn new(config: &SourceConfig) -> Result<Self> {
        config.validate()?;
        let fiber = &config.fiber;
        let (w1, w2) = (config.pump1.omega0, config.pump2.omega0);
        let modes = [
            config.pump1.mode,
            config.pump2.mode,
            config.signal_mode,
            config.idler_mode,
        ];
        let delta_lin = if config.same_modes() {
            0.0
        } else {
            phasematching_offset(fiber, modes, w1, w2, 0.0)?
        };
        let pump1 = dispersion_sample(fiber, modes[0], w1)?;
        let pump2 = dispersion_sample(fiber, modes[1], w2)?;
        let mut model = SourceModel {
            config: *config,
            pump1,
            pump2,
            signal: dispersion_sample(fiber, modes[2], w1 + delta_lin)?,
            idler: dispersion_sample(fiber, modes[3], w2 - delta_lin)?,
            phi_nl: 0.0,
        };
        if config.include_phi_nl {
            let phi = model.nonlinear_phase()?;
            model.phi_nl = phi;
            if phi != 0.0 {
                let delta = phasematching_offset(fiber, modes, w1, w2, phi)?;
                model.signal = dispersion_sample(fiber, modes[2], w1 + delta)?;
                model.idler = dispersion_sample(fiber, modes[3], w2 - delta)?;
            }
        }
        Ok(model)
    }

    pub fn length(&self) -> f64 {
        self.config.fiber.length
    }

    pub fn sigmas(&self) -> (f64, f64) {
        (self.config.pump1.sigma, self.config.pump2.sigma)
    }

    /// `(ω_s⁰, ω_i⁰)`.
    pub fn central_frequencies(&self) -> (f64, f64) {
        (self.signal.omega, self.idler.omega)
    }

    /// `k1′ + k2′`.
    pub fn slowness_sum(&self) -> f64 {
        self.pump1.k_prime + self.pump2.k_prime
    }

    pub fn temporal_params(&self) -> TemporalParams {
        let l = self.length();
        let (k1, k2, ks, ki) = (
            self.pump1.k_prime,
            self.pump2.k_prime,
            self.signal.k_prime,
            self.idler.k_prime,
        );
        let (s1, s2) = self.sigmas();
        let t12 = l * (k1 + k2);
        let tau12 = l * (k1 - k2);
        let t2s = l * (k2 + ks);
        let tau2i = l * (k2 - ki);
        let rho = s1 * s1 / (s1 * s1 + s2 * s2);
        let b = if s1 > 0.0 && s2 > 0.0 {
            Some(libm::sqrt(s1 * s1 + s2 * s2) / (t12 * s1 * s2))
        } else {
            None
        };
        TemporalParams {
            t12,
            tau12,
            t1s: l * (k1 + ks),
            tau1s: l * (k1 - ks),
            t1i: l * (k1 + ki),
            tau1i: l * (k1 - ki),
            t2s,
            tau2s: l * (k2 - ks),
            t2i: l * (k2 + ki),
            tau2i,
            ts: t2s - rho * t12,
            ti: tau2i - rho * t12,
            b,
            lambda: (2.0 * self.config.tau + tau12) / t12,
        }
    }

    /// SFWM coefficient `3 χ(3) √(ω1 ω2) f_eff / (4 ε0 c² n1 n2)` in 1/(W·m),
    /// with effective indices of the pump modes.
    pub fn gamma_sfwm(&self) -> Result<f64> {
        let c = &self.config;
        let f_eff = overlap_four(
            &c.fiber,
            [c.pump1.mode, c.pump2.mode, c.signal_mode, c.idler_mode],
            [
                wavelength_from_omega(self.pump1.omega),
                wavelength_from_omega(self.pump2.omega),
                wavelength_from_omega(self.signal.omega),
                wavelength_from_omega(self.idler.omega),
            ],
        )?;
        Ok(3.0 * c.chi3 * libm::sqrt(self.pump1.omega * self.pump2.omega) * f_eff
            / (4.0 * VACUUM_PERMITTIVITY * SPEED_OF_LIGHT * SPEED_OF_LIGHT
                * self.pump1.n_eff
                * self.pump2.n_eff))
    }

    /// Self- and cross-phase-modulation coefficients.
    pub fn nonlinear_coefficients(&self) -> Result<NonlinearCoefficients> {
        let c = &self.config;
        let fiber = &c.fiber;
        let pref = 3.0 * c.chi3 / (4.0 * VACUUM_PERMITTIVITY * SPEED_OF_LIGHT * SPEED_OF_LIGHT);
        let waves = [
            (c.pump1.mode, &self.pump1),
            (c.pump2.mode, &self.pump2),
            (c.signal_mode, &self.signal),
            (c.idler_mode, &self.idler),
        ];
        let lam = |s: &DispersionSample| wavelength_from_omega(s.omega);
        let spm = |(mode, s): (ModeId, &DispersionSample)| -> Result<f64> {
            Ok(pref * s.omega * overlap_self(fiber, mode, lam(s))? / (s.n_eff * s.n_eff))
        };
        let cpm = |(mu, sm): (ModeId, &DispersionSample),
                   (nu, sn): (ModeId, &DispersionSample)|
         -> Result<f64> {
            let f = overlap_two(fiber, mu, nu, [lam(sm), lam(sn)])?;
            Ok(pref * sm.omega * f / (sm.n_eff * sn.n_eff))
        };
        let [w1, w2, ws, wi] = waves;
        Ok(NonlinearCoefficients {
            gamma1: spm(w1)?,
            gamma2: spm(w2)?,
            gamma21: cpm(w2, w1)?,
            gamma_s1: cpm(ws, w1)?,
            gamma_i1: cpm(wi, w1)?,
            gamma12: cpm(w1, w2)?,
            gamma_s2: cpm(ws, w2)?,
            gamma_i2: cpm(wi, w2)?,
        })
    }

    /// `Φ_NL = (γ1 − 2γ21 − 2γs1 + 2γi1) P1 − (γ2 − 2γ12 + 2γs2 − 2γi2) P2`
    /// in rad/m, evaluated whether or not it is included in the mismatch.
    pub fn nonlinear_phase(&self) -> Result<f64> {
        let (p1, p2) = self.config.peak_powers();
        if p1 == 0.0 && p2 == 0.0 {
            return Ok(0.0);
        }
        Ok(self.nonlinear_coefficients()?.phase(p1, p2))
    }
}

/// SPM (`gamma1`, `gamma2`) and CPM (`gamma_μν`: wave μ, pump ν)
/// coefficients in 1/(W·m).
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NonlinearCoefficients {
    pub gamma1: f64,
    pub gamma2: f64,
    pub gamma21: f64,
    pub gamma_s1: f64,
    pub gamma_i1: f64,
    pub gamma12: f64,
    pub gamma_s2: f64,
    pub gamma_i2: f64,
}

impl NonlinearCoefficients {
    /// Bracket multiplying the pump 1 peak power.
    pub fn pump1_bracket(&self) -> f64 {
        self.gamma1 - 2.0 * self.gamma21 - 2.0 * self.gamma_s1 + 2.0 * self.gamma_i1
    }

    /// Bracket multiplying the pump 2 peak power (entering with a minus sign).
    pub fn pump2_bracket(&self) -> f64 {
        self.gamma2 - 2.0 * self.gamma12 + 2.0 * self.gamma_s2 - 2.0 * self.gamma_i2
    }

    pub fn phase(&self, p1: f64, p2: f64) -> f64 {
        self.pump1_bracket() * p1 - self.pump2_bracket() * p2
    }
}

/// Table of transit-time parameters at the central frequencies.
pub fn temporal_params(src: &SourceConfig) -> Result<TemporalParams> {
    Ok(SourceModel::new(src)?.temporal_params())
}

/// SFWM nonlinear coefficient in 1/(W·m).
pub fn gamma_sfwm(src: &SourceConfig) -> Result<f64> {
    SourceModel::new(src)?.gamma_sfwm()
}

/// Nonlinear phase `Φ_NL` in rad/m.
pub fn nonlinear_phase(src: &SourceConfig) -> Result<f64> {
    let mut plain = *src;
    plain.include_phi_nl = false;
    SourceModel::new(&plain)?.nonlinear_phase()
}

/// Orientation of the phasematching function, `arctan(σ2²/σ1²)` in degrees.
pub fn theta_si(src: &SourceConfig) -> Result<f64> {
    let (s1, s2) = (src.pump1.sigma, src.pump2.sigma);
    if s1 == 0.0 && s2 == 0.0 {
        return Err(Error::UnsupportedConfiguration(
            "orientation is undefined for two monochromatic pumps",
        ));
    }
    Ok(libm::atan2(s2 * s2, s1 * s1).to_degrees())
}
