mod common;

use core::f64::consts::PI;

use common::{few_mode_fiber, mixed, omega1, omega2, pulsed, thin_fiber};
use cpsfwm_core::constants::{omega_from_wavelength, FWHM_PER_SIGMA, SPEED_OF_LIGHT, THZ};
use cpsfwm_core::dispersion::ModeId;
use cpsfwm_core::jsa::{
    jsa_mixed, jsa_pulsed_linear, jsa_pulsed_numeric, FrequencyGrid, JointSpectrum, GRID_NODES,
};
use cpsfwm_core::metrics::{
    brightness_grid, brightness_mixed_closed, brightness_mixed_numeric, brightness_pulsed_closed,
    brightness_pulsed_numeric, effective_length, factorability_threshold_mixed,
    factorability_threshold_pulsed, fwhm, idler_bandwidth, intermodal_offsets,
    length_for_bandwidth, marginal_fwhm, purity, purity_with_refinement, Axis, BrightnessMethod,
    BRIGHTNESS_NODES,
};
use cpsfwm_core::source::{PumpConfig, SourceConfig, SourceModel};
use cpsfwm_core::Error;
use nalgebra::DMatrix;
use num_complex::Complex64;

fn model(src: &SourceConfig) -> SourceModel {
    SourceModel::new(src).unwrap()
}

fn synthetic(n: usize, f: impl Fn(f64, f64) -> Complex64) -> JointSpectrum {
    let grid = FrequencyGrid::new(1e15, 0.05, n, 2e15, 0.05, n).unwrap();
    let amplitude = DMatrix::from_fn(n, n, |j, k| f(grid.signal_detuning(j), grid.idler_detuning(k)));
    JointSpectrum::from_amplitude(grid, amplitude).unwrap()
}

#[test]
fn product_state_is_pure() {
    let f = synthetic(121, |x, y| Complex64::new((-x * x / 1.3 - y * y / 0.4).exp(), 0.0));
    let s = purity(&f).unwrap();
    assert!((s.purity - 1.0).abs() < 1e-6, "p = {}", s.purity);
    assert!((s.schmidt_number * s.purity - 1.0).abs() < 1e-12);
    assert!((s.weights().sum::<f64>() - 1.0).abs() < 1e-8);
    assert!(s.singular_values.windows(2).all(|w| w[0] >= w[1]));
}

#[test]
fn two_term_schmidt_state_has_half_purity() {
    // ψ0(x)ψ0(y) + ψ1(x)ψ1(y), Hermite functions orthonormal on the grid
    let psi0 = |x: f64| (-x * x / 2.0).exp();
    let psi1 = |x: f64| 2f64.sqrt() * x * (-x * x / 2.0).exp();
    let f = synthetic(241, |x, y| Complex64::new(psi0(x) * psi0(y) + psi1(x) * psi1(y), 0.0));
    let s = purity(&f).unwrap();
    assert!((s.purity - 0.5).abs() < 1e-6, "p = {}", s.purity);
    assert!((s.schmidt_number - 2.0).abs() < 1e-5);
}

#[test]
fn purity_ignores_global_phase_and_transposition() {
    let f = synthetic(81, |x, y| {
        Complex64::new((-(x + y) * (x + y) - 0.3 * (x - y) * (x - y)).exp(), 0.0)
    });
    let p = purity(&f).unwrap().purity;
    let mut rotated = f.clone();
    rotated.amplitude.iter_mut().for_each(|z| *z *= Complex64::from_polar(1.0, 0.7));
    assert!((purity(&rotated).unwrap().purity - p).abs() < 1e-12);
    assert!((purity(&f.transposed()).unwrap().purity - p).abs() < 1e-12);
    assert!(p > 0.0 && p < 1.0);
}

#[test]
fn zero_state_is_rejected() {
    let grid = FrequencyGrid::new(1e15, 1.0, 5, 2e15, 1.0, 5).unwrap();
    let zero = DMatrix::from_element(5, 5, Complex64::new(0.0, 0.0));
    assert!(matches!(
        JointSpectrum::from_amplitude(grid, zero),
        Err(Error::DegenerateSpectrum)
    ));
}

#[test]
fn marked_factorable_configurations() {
    for s2 in [0.25, 1.0, 4.0] {
        let m = model(&pulsed(1.0, s2, 0.01));
        let grid = FrequencyGrid::common_spacing(&m, GRID_NODES).unwrap();
        let p = purity(&jsa_pulsed_numeric(&m, &grid).unwrap()).unwrap().purity;
        assert!(p >= 0.99, "σ2 = {s2}: p = {p}");
    }
}

#[test]
fn purity_above_pulsed_threshold() {
    for (s1, s2) in [(0.3, 1.0), (1.0, 1.0), (3.0, 0.5)] {
        let probe = model(&pulsed(s1, s2, 0.01));
        let l_th = factorability_threshold_pulsed(&probe).unwrap();
        let m = model(&pulsed(s1, s2, l_th));
        let grid = FrequencyGrid::common_spacing(&m, 129).unwrap();
        let coarse = jsa_pulsed_numeric(&m, &grid).unwrap();
        let fine = jsa_pulsed_numeric(&m, &grid.refined()).unwrap();
        let s = purity_with_refinement(&coarse, &fine).unwrap();
        assert!(s.purity >= 0.98, "({s1}, {s2}): p = {}", s.purity);
        assert!(s.grid_delta.unwrap() < 1e-3);
    }
}

#[test]
fn effective_length_values_and_scaling() {
    let m = model(&pulsed(1.0, 1.0, 0.01));
    let l_eff = effective_length(&m).unwrap();
    assert!((l_eff - 0.8e-3).abs() < 0.1 * 0.8e-3, "L_eff = {l_eff}");
    let half = effective_length(&model(&pulsed(0.5, 0.5, 0.01))).unwrap();
    assert!((half - 2.0 * l_eff).abs() < 1e-12 * l_eff);
    let narrow = effective_length(&model(&pulsed(1.0, 1e-6, 0.01))).unwrap();
    assert!(narrow > 1e5 * l_eff);

    let l_th = factorability_threshold_pulsed(&m).unwrap();
    let lambda = m.temporal_params().lambda;
    let ratio = (1.0 + lambda) / (0.14 * 4.0 * 2f64.sqrt());
    assert!((l_th / l_eff - ratio).abs() < 1e-12);
    let l_th2 = factorability_threshold_pulsed(&model(&pulsed(2.0, 2.0, 0.01))).unwrap();
    assert!((l_th2 - 0.5 * l_th).abs() < 1e-12 * l_th);
}

#[test]
fn effective_length_rejects_separated_pumps() {
    let m = model(&pulsed(1.0, 1.0, 0.01));
    let t12 = m.temporal_params().t12;
    let delayed = model(&pulsed(1.0, 1.0, 0.01).with_tau(-1.5 * t12));
    assert!(matches!(
        effective_length(&delayed),
        Err(Error::InvalidParameter { .. })
    ));
}

#[test]
fn pulsed_closed_form_saturates() {
    let probe = model(&pulsed(1.0, 1.0, 0.01));
    let l_eff = effective_length(&probe).unwrap();
    let n_at = |l: f64| {
        brightness_pulsed_closed(&model(&pulsed(1.0, 1.0, l)))
            .unwrap()
            .pairs_per_second
    };
    let ratio = n_at(10.0 * l_eff) / n_at(l_eff);
    assert!((1.0..=1.2).contains(&ratio), "ratio {ratio}");
    let mut prev = 0.0;
    for i in 0..=40 {
        let l = 1e-3 * 10f64.powf(i as f64 / 10.0);
        let n = n_at(l);
        assert!(n >= prev, "not monotone at L = {l}");
        prev = n;
    }
}

#[test]
fn pulsed_closed_form_is_symmetric_under_pump_exchange() {
    let src = pulsed(0.4, 1.3, 0.02);
    let mut swapped = src;
    core::mem::swap(&mut swapped.pump1, &mut swapped.pump2);
    let a = brightness_pulsed_closed(&model(&src)).unwrap().pairs_per_second;
    let b = brightness_pulsed_closed(&model(&swapped)).unwrap().pairs_per_second;
    assert!((a - b).abs() < 1e-10 * a, "{a} vs {b}");
}

#[test]
fn pair_rate_scales_with_both_powers() {
    let src = pulsed(1.0, 1.0, 0.01);
    let mut doubled = src;
    doubled.pump1.avg_power *= 2.0;
    doubled.pump2.avg_power *= 2.0;
    let a = brightness_pulsed_closed(&model(&src)).unwrap().pairs_per_second;
    let b = brightness_pulsed_closed(&model(&doubled)).unwrap().pairs_per_second;
    assert!((b - 4.0 * a).abs() < 1e-12 * b);

    let m = model(&src);
    let grid = brightness_grid(&m, BRIGHTNESS_NODES).unwrap();
    let na = brightness_pulsed_numeric(&m, &grid).unwrap().pairs_per_second;
    let nb = brightness_pulsed_numeric(&model(&doubled), &grid)
        .unwrap()
        .pairs_per_second;
    assert!((nb - 4.0 * na).abs() < 1e-12 * nb);
}

#[test]
fn pulsed_numeric_agrees_with_closed_form_beyond_effective_length() {
    let l_eff = effective_length(&model(&pulsed(1.0, 1.0, 0.01))).unwrap();
    for factor in [3.0, 10.0] {
        let m = model(&pulsed(1.0, 1.0, factor * l_eff));
        let grid = brightness_grid(&m, BRIGHTNESS_NODES).unwrap();
        let numeric = brightness_pulsed_numeric(&m, &grid).unwrap();
        let closed = brightness_pulsed_closed(&m).unwrap();
        assert_eq!(numeric.method, BrightnessMethod::Numeric);
        assert!(numeric.residual.unwrap() < 0.01);
        let rel = (numeric.pairs_per_second - closed.pairs_per_second).abs()
            / closed.pairs_per_second;
        assert!(rel < 0.05, "L = {factor} L_eff: relative gap {rel}");
    }
}

#[test]
fn pulsed_numeric_plateau() {
    let l_eff = effective_length(&model(&pulsed(1.0, 1.0, 0.01))).unwrap();
    let n_at = |l: f64| {
        let m = model(&pulsed(1.0, 1.0, l));
        let grid = brightness_grid(&m, BRIGHTNESS_NODES).unwrap();
        brightness_pulsed_numeric(&m, &grid).unwrap().pairs_per_second
    };
    let (a, b) = (n_at(8.0 * l_eff), n_at(16.0 * l_eff));
    assert!((b / a - 1.0).abs() < 0.02, "{a} → {b}");
}

#[test]
fn mixed_closed_form_is_linear_in_length() {
    let a = brightness_mixed_closed(&model(&mixed(1.0, 0.01))).unwrap().pairs_per_second;
    let b = brightness_mixed_closed(&model(&mixed(1.0, 0.02))).unwrap().pairs_per_second;
    assert!((b / a - 2.0).abs() < 1e-12);
    let mut more = mixed(1.0, 0.01);
    more.pump2.avg_power *= 3.0;
    let c = brightness_mixed_closed(&model(&more)).unwrap().pairs_per_second;
    assert!((c / a - 3.0).abs() < 1e-12);
}

#[test]
fn mixed_numeric_agrees_with_closed_form_above_threshold() {
    let l_th = factorability_threshold_mixed(&model(&mixed(1.0, 0.01))).unwrap();
    for factor in [2.0, 10.0, 100.0] {
        let m = model(&mixed(1.0, factor * l_th));
        let grid = brightness_grid(&m, BRIGHTNESS_NODES).unwrap();
        let numeric = brightness_mixed_numeric(&m, &grid).unwrap();
        let closed = brightness_mixed_closed(&m).unwrap();
        let rel = (numeric.pairs_per_second - closed.pairs_per_second).abs()
            / closed.pairs_per_second;
        assert!(rel < 0.05, "L = {factor} L_th: relative gap {rel}");
    }
    let m = model(&mixed(1.0, 10.0 * l_th));
    let mut more = m.config;
    more.pump2.avg_power *= 3.0;
    let grid = brightness_grid(&m, BRIGHTNESS_NODES).unwrap();
    let a = brightness_mixed_numeric(&m, &grid).unwrap().pairs_per_second;
    let b = brightness_mixed_numeric(&model(&more), &grid).unwrap().pairs_per_second;
    assert!((b / a - 3.0).abs() < 1e-12);
}

/// 0.42 nm FWHM pump at 820 nm, monochromatic pump at 532 nm.
fn narrowband(length: f64) -> SourceConfig {
    let lambda = 820e-9;
    let fwhm = 2.0 * PI * SPEED_OF_LIGHT * 0.42e-9 / (lambda * lambda);
    let p1 = PumpConfig::new(omega_from_wavelength(lambda), fwhm / FWHM_PER_SIGMA, 0.05, ModeId::LP01)
        .unwrap();
    let p2 = PumpConfig::new(omega2(), 0.0, 0.05, ModeId::LP01).unwrap();
    SourceConfig::new(thin_fiber(length), p1, p2)
}

#[test]
fn mixed_threshold_and_bandwidth_formulas() {
    let m = model(&mixed(1.0, 0.01));
    let l_th = factorability_threshold_mixed(&m).unwrap();
    assert!((l_th - 0.5e-3).abs() < 0.5 * 0.5e-3, "threshold {l_th}");
    for target in [1e6, 3e7, 2e9] {
        let l = length_for_bandwidth(&m, target).unwrap();
        let back = idler_bandwidth(&model(&mixed(1.0, l))).unwrap();
        assert!((back - target).abs() < 1e-12 * target);
    }
    assert!(length_for_bandwidth(&m, 0.0).is_err());
    assert!(length_for_bandwidth(&m, -1.0).is_err());
    assert!(idler_bandwidth(&model(&pulsed(1.0, 1.0, 0.01))).is_err());
}

#[test]
fn narrowband_idler_at_thirty_six_metres() {
    let m = model(&narrowband(36.0));
    let grid = FrequencyGrid::default_for(&m, GRID_NODES).unwrap();
    let f = jsa_mixed(&m, &grid).unwrap();
    let idler = marginal_fwhm(&f, Axis::Idler).unwrap();
    assert!(idler <= 3.0e7, "idler FWHM {idler}");
    let signal = marginal_fwhm(&f, Axis::Signal).unwrap();
    assert!((signal - 1.18e12).abs() <= 0.02 * 1.18e12, "signal FWHM {signal}");
    let closed = idler_bandwidth(&m).unwrap() * FWHM_PER_SIGMA;
    assert!((idler - closed).abs() <= 0.05 * closed, "{idler} vs {closed}");
    let p = purity(&f).unwrap().purity;
    assert!(p >= 0.999, "p = {p}");
}

fn mixed_purity_at(factor: f64) -> f64 {
    let l_th = factorability_threshold_mixed(&model(&mixed(1.0, 0.01))).unwrap();
    let m = model(&mixed(1.0, factor * l_th));
    let grid = FrequencyGrid::default_for(&m, GRID_NODES).unwrap();
    purity(&jsa_mixed(&m, &grid).unwrap()).unwrap().purity
}

#[test]
fn mixed_purity_grows_with_length() {
    let mut prev = 0.0;
    for factor in [0.1, 0.3, 1.0, 3.0, 10.0] {
        let p = mixed_purity_at(factor);
        assert!(p >= prev - 1e-9, "purity fell to {p} at {factor} L_th");
        prev = p;
    }
}

#[test]
fn mixed_purity_ten_thresholds() {
    let p = mixed_purity_at(10.0);
    assert!(p > 0.99, "p = {p} at 10 L_th");
}

#[test]
fn pulsed_marginals_inherit_pump_bandwidths() {
    let (s1, s2) = (1.0, 0.5);
    let l_th = factorability_threshold_pulsed(&model(&pulsed(s1, s2, 0.01))).unwrap();
    let m = model(&pulsed(s1, s2, 3.0 * l_th));
    let grid = FrequencyGrid::common_spacing(&m, GRID_NODES).unwrap();
    for f in [jsa_pulsed_numeric(&m, &grid).unwrap(), jsa_pulsed_linear(&m, &grid).unwrap()] {
        let ws = marginal_fwhm(&f, Axis::Signal).unwrap();
        let wi = marginal_fwhm(&f, Axis::Idler).unwrap();
        let (es, ei) = (s1 * THZ * FWHM_PER_SIGMA, s2 * THZ * FWHM_PER_SIGMA);
        assert!((ws - es).abs() <= 0.02 * es, "signal {ws} vs {es}");
        assert!((wi - ei).abs() <= 0.02 * ei, "idler {wi} vs {ei}");
    }
}

#[test]
fn fwhm_of_sampled_gaussian() {
    let sigma = 3.0;
    let h = 0.01;
    let x: Vec<f64> = (0..2001).map(|i| (i as f64 - 1000.0) * h).collect();
    let y: Vec<f64> = x.iter().map(|v| (-2.0 * v * v / (sigma * sigma)).exp()).collect();
    let w = fwhm(&x, &y).unwrap();
    assert!((w - sigma * FWHM_PER_SIGMA).abs() < h * h);
}

#[test]
fn fwhm_flat_top_and_ambiguity() {
    let x: Vec<f64> = (0..11).map(|i| i as f64).collect();
    let flat = [0.0, 0.0, 0.2, 1.0, 1.0, 1.0, 1.0, 1.0, 0.2, 0.0, 0.0];
    // crossings at 2.375 and 7.625
    assert!((fwhm(&x, &flat).unwrap() - 5.25).abs() < 1e-12);
    let twin = [0.0, 1.0, 0.1, 0.0, 0.0, 0.0, 0.0, 0.0, 0.1, 0.9, 0.0];
    assert!(matches!(fwhm(&x, &twin), Err(Error::AmbiguousMarginal(_))));
    let equal = [0.0, 1.0, 0.1, 0.0, 0.0, 0.0, 0.0, 0.0, 0.1, 1.0, 0.0];
    assert!(matches!(fwhm(&x, &equal), Err(Error::AmbiguousMarginal(_))));
    let edge = [1.0, 0.9, 0.8, 0.7, 0.6, 0.55, 0.52, 0.51, 0.505, 0.501, 0.5001];
    assert!(matches!(fwhm(&x, &edge), Err(Error::AmbiguousMarginal(_))));
}

#[test]
fn intermodal_table() {
    let fiber = few_mode_fiber(0.01);
    let same = intermodal_offsets(&fiber, 820e-9, 532e-9, ModeId::LP01).unwrap();
    assert_eq!(same.delta, 0.0);
    assert_eq!((same.dlambda_s, same.dlambda_i), (0.0, 0.0));

    let rows = [
        (ModeId::LP11, 816.1, 533.7),
        (ModeId::LP21, 811.1, 535.8),
        (ModeId::LP02, 809.7, 536.4),
    ];
    let mut prev = 0.0;
    for (mode, ls, li) in rows {
        let r = intermodal_offsets(&fiber, 820e-9, 532e-9, mode).unwrap();
        assert!((r.lambda_s * 1e9 - ls).abs() <= 1.0, "{mode}: λs = {}", r.lambda_s);
        assert!((r.lambda_i * 1e9 - li).abs() <= 1.0, "{mode}: λi = {}", r.lambda_i);
        assert!(r.dlambda_s < 0.0 && r.dlambda_i > 0.0);
        let (ds, di) = r.frequency_offsets();
        assert_eq!(ds, -di);
        assert!(r.delta.abs() > prev);
        prev = r.delta.abs();
    }
}

#[test]
fn intermodal_needs_a_guided_mode() {
    let err = intermodal_offsets(&thin_fiber(0.01), 820e-9, 532e-9, ModeId::LP11).unwrap_err();
    assert!(matches!(err, Error::ModeNotGuided { .. }), "{err:?}");
}

#[test]
fn pulsed_formulas_reject_mixed_sources() {
    let m = model(&mixed(1.0, 0.01));
    assert!(matches!(effective_length(&m), Err(Error::UnsupportedConfiguration(_))));
    assert!(brightness_pulsed_closed(&m).is_err());
    let p = model(&pulsed(1.0, 1.0, 0.01));
    assert!(brightness_mixed_closed(&p).is_err());
    assert!(factorability_threshold_mixed(&p).is_err());
    let _ = (omega1(), omega2());
}
