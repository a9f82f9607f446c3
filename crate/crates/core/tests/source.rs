mod common;

use core::f64::consts::PI;

use common::{few_mode_fiber, mixed, omega1, omega2, pulsed, POWER};
use cpsfwm_core::constants::{
    wavelength_from_omega, SPEED_OF_LIGHT, THZ, VACUUM_PERMITTIVITY,
};
use cpsfwm_core::dispersion::{overlap_self, sample, ModeId};
use cpsfwm_core::numerics::gauss_legendre;
use cpsfwm_core::source::{
    gamma_sfwm, nonlinear_phase, pump_envelope, temporal_params, theta_si, PumpConfig,
    PumpScheme, SourceConfig, SourceModel,
};
use cpsfwm_core::{Error, ErrorKind};
use proptest::prelude::*;

fn pump(sigma: f64) -> PumpConfig {
    PumpConfig::new(omega1(), sigma, POWER, ModeId::LP01).unwrap()
}

#[test]
fn envelope_peak_width_and_norm() {
    let sigma = 0.7 * THZ;
    let p = pump(sigma);
    let peak = pump_envelope(&p, p.omega0).unwrap();
    let expected = 2f64.powf(0.25) / (PI.powf(0.25) * sigma.sqrt());
    assert!((peak - expected).abs() < 1e-14 * expected);
    let ratio = pump_envelope(&p, p.omega0 + sigma).unwrap() / peak;
    assert!((ratio - (-1.0f64).exp()).abs() < 1e-14);
    let rule = gauss_legendre(200, p.omega0 - 8.0 * sigma, p.omega0 + 8.0 * sigma).unwrap();
    let norm = rule.integrate(|w| pump_envelope(&p, w).unwrap().powi(2));
    assert!((norm - 1.0).abs() < 1e-8, "norm {norm}");
}

#[test]
fn monochromatic_pump_has_no_envelope() {
    let err = pump_envelope(&pump(0.0), omega1()).unwrap_err();
    assert!(matches!(err, Error::UnsupportedConfiguration(_)));
}

#[test]
fn invalid_pumps_are_config_errors() {
    for (w, s, p) in [(-1.0, 1.0, 1.0), (1e15, -1.0, 1.0), (1e15, 1.0, -0.1), (f64::NAN, 1.0, 1.0)] {
        let err = PumpConfig::new(w, s, p, ModeId::LP01).unwrap_err();
        assert_eq!(err.kind(), ErrorKind::Config);
    }
}

#[test]
fn scheme_detection() {
    assert_eq!(pulsed(1.0, 1.0, 0.01).scheme().unwrap(), PumpScheme::Pulsed);
    assert_eq!(mixed(1.0, 0.01).scheme().unwrap(), PumpScheme::Mixed);
    let both_cw = pulsed(0.0, 0.0, 0.01);
    assert!(matches!(
        both_cw.scheme().unwrap_err(),
        Error::UnsupportedConfiguration(_)
    ));
}

#[test]
fn lambda_for_thin_fiber() {
    let tp = temporal_params(&pulsed(0.01, 0.03, 0.01)).unwrap();
    let target = -0.00685;
    assert!(
        (tp.lambda - target).abs() <= 0.2 * target.abs(),
        "Λ = {}",
        tp.lambda
    );
    // τ = 0: Λ is the transit-time ratio
    assert!((tp.lambda - tp.tau12 / tp.t12).abs() < 1e-15);
}

#[test]
fn b_values_for_one_centimetre() {
    for (s2, target) in [(0.03, 1.07), (0.01, 1.43)] {
        let b = temporal_params(&pulsed(0.01, s2, 0.01)).unwrap().b.unwrap();
        assert!((b - target).abs() <= 0.1 * target, "B = {b} for σ2 = {s2}");
    }
}

#[test]
fn same_mode_table_identities() {
    let tp = temporal_params(&pulsed(0.5, 0.8, 0.02)).unwrap();
    assert_eq!(tp.tau1s, 0.0);
    assert_eq!(tp.tau2i, 0.0);
    assert_eq!(tp.t2s, tp.t12);
    assert_eq!(tp.t1i, tp.t12);
    for t in [tp.t12, tp.t1s, tp.t1i, tp.t2s, tp.t2i] {
        assert!(t > 0.0);
    }
}

#[test]
fn transit_times_from_sampled_slowness() {
    let src = pulsed(0.5, 0.8, 0.02);
    let tp = temporal_params(&src).unwrap();
    let k1 = sample(&src.fiber, ModeId::LP01, omega1()).unwrap().k_prime;
    let k2 = sample(&src.fiber, ModeId::LP01, omega2()).unwrap().k_prime;
    assert!((tp.t12 - 0.02 * (k1 + k2)).abs() < 1e-14 * tp.t12);
    assert!((tp.tau12 - 0.02 * (k1 - k2)).abs() < 1e-12 * tp.t12);
    // T_s = σ2²/(σ1²+σ2²) t12 and T_i = −σ1²/(σ1²+σ2²) t12 for one mode
    let (s1, s2) = (0.5f64, 0.8f64);
    let sum = s1 * s1 + s2 * s2;
    assert!((tp.ts - s2 * s2 / sum * tp.t12).abs() < 1e-12 * tp.t12);
    assert!((tp.ti + s1 * s1 / sum * tp.t12).abs() < 1e-12 * tp.t12);
}

#[test]
fn delay_shifts_lambda() {
    let base = temporal_params(&pulsed(1.0, 1.0, 0.01)).unwrap();
    let delayed = temporal_params(&pulsed(1.0, 1.0, 0.01).with_tau(10.0 * base.t12)).unwrap();
    assert!((delayed.lambda - (20.0 + base.lambda)).abs() < 1e-12);
}

#[test]
fn mixed_pump_has_no_b() {
    let tp = temporal_params(&mixed(1.0, 0.01)).unwrap();
    assert!(tp.b.is_none());
}

#[test]
fn gamma_positive_and_linear_in_chi3() {
    let src = pulsed(1.0, 1.0, 0.01);
    let g = gamma_sfwm(&src).unwrap();
    assert!(g > 0.0);
    let mut doubled = src;
    doubled.chi3 *= 2.0;
    let g2 = gamma_sfwm(&doubled).unwrap();
    assert!((g2 - 2.0 * g).abs() < 1e-14 * g);
}

#[test]
fn gamma_drops_when_one_wave_changes_mode() {
    let fiber = few_mode_fiber(0.01);
    let p1 = PumpConfig::new(omega1(), THZ, POWER, ModeId::LP01).unwrap();
    let p2 = PumpConfig::new(omega2(), THZ, POWER, ModeId::LP01).unwrap();
    let all = SourceConfig::new(fiber, p1, p2);
    let p2_hi = PumpConfig::new(omega2(), THZ, POWER, ModeId::LP21).unwrap();
    let one = SourceConfig::new(fiber, p1, p2_hi).with_modes(ModeId::LP01, ModeId::LP21);
    let g_all = gamma_sfwm(&all).unwrap();
    let g_one = gamma_sfwm(&one).unwrap();
    assert!(g_all > g_one, "{g_all} vs {g_one}");
}

#[test]
fn nonlinear_phase_vanishes_without_power() {
    let mut src = pulsed(1.0, 1.0, 0.01);
    src.pump1.avg_power = 0.0;
    src.pump2.avg_power = 0.0;
    assert_eq!(nonlinear_phase(&src).unwrap(), 0.0);
}

#[test]
fn same_mode_brackets_reduce_to_spm_coefficients() {
    let src = pulsed(1.0, 1.0, 0.01);
    let model = SourceModel::new(&src).unwrap();
    let coeffs = model.nonlinear_coefficients().unwrap();
    // SPM coefficients computed here from the self-overlap directly
    let pref = 3.0 * src.chi3 / (4.0 * VACUUM_PERMITTIVITY * SPEED_OF_LIGHT * SPEED_OF_LIGHT);
    let spm = |w: f64| {
        let s = sample(&src.fiber, ModeId::LP01, w).unwrap();
        let f = overlap_self(&src.fiber, ModeId::LP01, wavelength_from_omega(w)).unwrap();
        pref * w * f / (s.n_eff * s.n_eff)
    };
    let (g1, g2) = (spm(omega1()), spm(omega2()));
    assert!((coeffs.gamma1 - g1).abs() < 1e-12 * g1);
    assert!((coeffs.gamma2 - g2).abs() < 1e-12 * g2);
    assert!((coeffs.pump1_bracket() + g1).abs() < 1e-10 * g1);
    assert!((coeffs.pump2_bracket() + g2).abs() < 1e-10 * g2);

    let (p1, p2) = src.peak_powers();
    let phi = nonlinear_phase(&src).unwrap();
    assert!((phi - (-g1 * p1 + g2 * p2)).abs() < 1e-9 * (g1 * p1).abs());
}

#[test]
fn nonlinear_phase_is_antisymmetric_in_the_pumps() {
    let src = pulsed(1.0, 1.0, 0.01);
    let c = SourceModel::new(&src).unwrap().nonlinear_coefficients().unwrap();
    let (p1, p2) = (3.0, 7.0);
    let forward = c.phase(p1, p2);
    // exchanging powers together with brackets flips the sign
    let exchanged = c.pump2_bracket() * p2 - c.pump1_bracket() * p1;
    assert!((forward + exchanged).abs() < 1e-12 * forward.abs().max(1e-300));
}

#[test]
fn enabling_nonlinear_phase_moves_phasematching() {
    let mut src = pulsed(1.0, 1.0, 0.01);
    src.pump1.avg_power = 5.0;
    src.include_phi_nl = true;
    let model = SourceModel::new(&src).unwrap();
    assert!(model.phi_nl != 0.0);
    assert!(model.signal.omega != omega1());
    let (ws, wi) = model.central_frequencies();
    assert!((ws + wi - omega1() - omega2()).abs() < 1e-6 * ws);
}

#[test]
fn orientation_angles() {
    assert!((theta_si(&pulsed(1.0, 1.0, 0.01)).unwrap() - 45.0).abs() < 1e-12);
    let t = theta_si(&pulsed(1.0, 3f64.sqrt(), 0.01)).unwrap();
    assert!((t - 71.565).abs() < 1e-3);
    assert!(theta_si(&pulsed(0.01, 10.0, 0.01)).unwrap() > 89.99);
    assert!(theta_si(&pulsed(10.0, 0.01, 0.01)).unwrap() < 0.01);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn orientation_stays_in_quadrant(s1 in 0.0f64..10.0, s2 in 0.0f64..10.0) {
        prop_assume!(s1 > 0.0 || s2 > 0.0);
        let t = theta_si(&pulsed(s1, s2, 0.01)).unwrap();
        prop_assert!((0.0..=90.0).contains(&t));
    }

    #[test]
    fn b_identity_and_lambda_bound(
        s1 in 0.005f64..5.0,
        s2 in 0.005f64..5.0,
        length in 1e-4f64..1.0,
    ) {
        let tp = temporal_params(&pulsed(s1, s2, length)).unwrap();
        let b = tp.b.unwrap();
        let r = (s1 / s2).powi(2);
        let identity = (1.0 + r).sqrt() / (s1 * THZ * tp.t12);
        prop_assert!((b - identity).abs() <= 1e-12 * b);
        prop_assert!(tp.lambda.abs() < 1.0);
    }
}

#[test]
fn public_types_are_thread_safe() {
    fn send_sync<T: Send + Sync>() {}
    send_sync::<SourceConfig>();
    send_sync::<SourceModel>();
    send_sync::<cpsfwm_core::jsa::JointSpectrum>();
    send_sync::<cpsfwm_core::jsa::FrequencyGrid>();
    send_sync::<cpsfwm_core::metrics::SchmidtResult>();
    send_sync::<cpsfwm_core::dispersion::FiberSpec>();
    send_sync::<Error>();
}
