use core::f64::consts::PI;

use cpsfwm_core::constants::{omega_from_wavelength, SPEED_OF_LIGHT};
use cpsfwm_core::dispersion::{
    characteristic_residual, cutoff_v, group_slowness, mode_profile, overlap_four, overlap_self,
    overlap_two, propagation_constant, sample, sellmeier_index, solve_lp_modes,
    solve_lp_modes_with, v_number, DispersionTable, FiberSpec, ModeId, BRACKETS,
};
use cpsfwm_core::numerics::{bessel_j, bessel_k};
use cpsfwm_core::Error;
use proptest::prelude::*;

fn single_mode_fiber() -> FiberSpec {
    FiberSpec::new(1.5e-6, 0.13, 0.01).unwrap()
}

fn few_mode_fiber() -> FiberSpec {
    FiberSpec::new(2.0e-6, 0.3, 0.01).unwrap()
}

// Reference values below come from an independent SciPy implementation of
// the same fiber model (jv/kv plus brentq).
const B_LP01_SMF_820: f64 = 0.226_837_840_715_359_1;
const B_FEW_MODE_820: [(ModeId, f64); 4] = [
    (ModeId::LP01, 0.817_692_482_815_954),
    (ModeId::LP11, 0.546_240_438_657_552_6),
    (ModeId::LP21, 0.209_175_414_146_471_3),
    (ModeId::LP02, 0.123_766_633_458_789_97),
];
const K_PRIME_SMF_820: f64 = 4.908_175_928_313_941e-9;
const K_PRIME_SMF_532: f64 = 4.975_877_277_176_743_5e-9;

#[test]
fn sellmeier_against_direct_formula() {
    // independent evaluation of the three-term law
    let lam: f64 = 0.5876;
    let l2 = lam * lam;
    let n2 = 1.0
        + 0.6961663 * l2 / (l2 - 0.0684043f64.powi(2))
        + 0.4079426 * l2 / (l2 - 0.1162414f64.powi(2))
        + 0.8974794 * l2 / (l2 - 9.896161f64.powi(2));
    let n = sellmeier_index(0.5876e-6).unwrap();
    assert!((n - n2.sqrt()).abs() < 1e-14);
    assert!((n - 1.45846).abs() < 1e-4);
    assert!(matches!(
        sellmeier_index(0.2099e-6),
        Err(Error::WavelengthOutOfRange { .. })
    ));
    assert!(sellmeier_index(3.8e-6).is_err());
}

#[test]
fn v_number_examples() {
    let v = v_number(&few_mode_fiber(), 0.532e-6).unwrap();
    assert!((v - 2.0 * PI * 2.0 * 0.3 / 0.532).abs() < 1e-12);
    assert!((v - 7.086).abs() < 1e-3);
    let v = v_number(&single_mode_fiber(), 0.820e-6).unwrap();
    assert!((v - 1.494).abs() < 1e-3);
    // V falls with wavelength towards zero
    let long = v_number(&single_mode_fiber(), 3.7e-6).unwrap();
    assert!(long < v && long > 0.0);
}

#[test]
fn single_mode_fiber_guides_only_lp01() {
    let modes = solve_lp_modes(&single_mode_fiber(), 0.820e-6).unwrap();
    assert_eq!(modes.len(), 1);
    assert_eq!(modes[0].mode, ModeId::LP01);
    assert!((modes[0].b - B_LP01_SMF_820).abs() < 1e-12);
}

#[test]
fn few_mode_fiber_has_three_higher_order_modes() {
    let fiber = few_mode_fiber();
    let modes = solve_lp_modes(&fiber, 0.820e-6).unwrap();
    assert_eq!(modes.len(), 4);
    let v = v_number(&fiber, 0.820e-6).unwrap();
    for (found, (mode, b)) in modes.iter().zip(B_FEW_MODE_820) {
        assert_eq!(found.mode, mode);
        assert!((found.b - b).abs() < 1e-12, "{mode}: {} vs {b}", found.b);
        assert!(characteristic_residual(mode.l, v, found.b).abs() < 1e-10);
    }
    for pair in modes.windows(2) {
        assert!(pair[0].b > pair[1].b);
    }
}

#[test]
fn root_count_stable_under_bracket_refinement() {
    let fiber = few_mode_fiber();
    for lam in [0.532e-6, 0.7e-6, 0.820e-6, 1.3e-6] {
        let coarse = solve_lp_modes_with(&fiber, lam, BRACKETS).unwrap();
        let fine = solve_lp_modes_with(&fiber, lam, 2 * BRACKETS).unwrap();
        assert_eq!(coarse.len(), fine.len());
        for (a, b) in coarse.iter().zip(&fine) {
            assert_eq!(a.mode, b.mode);
            assert!((a.b - b.b).abs() < 1e-12);
        }
    }
}

#[test]
fn cutoffs_are_bessel_zeros() {
    assert_eq!(cutoff_v(ModeId::LP01), 0.0);
    assert!((cutoff_v(ModeId::LP11) - 2.404_825_557_695_773).abs() < 1e-12);
    assert!((cutoff_v(ModeId::LP21) - 3.831_705_970_207_512).abs() < 1e-12);
    assert!((cutoff_v(ModeId::LP02) - 3.831_705_970_207_512).abs() < 1e-12);
    assert!((cutoff_v(ModeId { l: 3, m: 1 }) - 5.135_622_301_840_683).abs() < 1e-12);
}

#[test]
fn propagation_constant_bounds_and_cutoff() {
    let fiber = single_mode_fiber();
    let omega = omega_from_wavelength(0.820e-6);
    let k = propagation_constant(&fiber, ModeId::LP01, omega).unwrap();
    let n_clad = fiber.cladding_index(omega).unwrap();
    let n_core = fiber.core_index(omega).unwrap();
    assert!(k > n_clad * omega / SPEED_OF_LIGHT && k <= n_core * omega / SPEED_OF_LIGHT);

    match propagation_constant(&fiber, ModeId::LP21, omega) {
        Err(Error::ModeNotGuided { mode, cutoff, .. }) => {
            assert_eq!(mode, ModeId::LP21);
            assert!((cutoff - 3.8317).abs() < 1e-3);
        }
        other => panic!("expected cutoff error, got {other:?}"),
    }
}

#[test]
fn propagation_constant_increases_with_frequency() {
    let fiber = few_mode_fiber();
    for mode in [ModeId::LP01, ModeId::LP11, ModeId::LP21, ModeId::LP02] {
        let lo = omega_from_wavelength(0.85e-6);
        let hi = omega_from_wavelength(0.5e-6);
        let mut prev = 0.0;
        for i in 0..=40 {
            let omega = lo + (hi - lo) * i as f64 / 40.0;
            let k = propagation_constant(&fiber, mode, omega).unwrap();
            assert!(k > prev, "{mode} at step {i}");
            prev = k;
        }
    }
}

#[test]
fn group_slowness_reference_values() {
    let fiber = single_mode_fiber();
    let k1 = group_slowness(&fiber, ModeId::LP01, omega_from_wavelength(0.820e-6)).unwrap();
    let k2 = group_slowness(&fiber, ModeId::LP01, omega_from_wavelength(0.532e-6)).unwrap();
    assert!(((k1 - K_PRIME_SMF_820) / K_PRIME_SMF_820).abs() < 1e-6);
    assert!(((k2 - K_PRIME_SMF_532) / K_PRIME_SMF_532).abs() < 1e-6);
    let group_index = k1 * SPEED_OF_LIGHT;
    assert!((1.46..=1.48).contains(&group_index));
    assert!((9.6e-9..=10.1e-9).contains(&(k1 + k2)));
}

#[test]
fn group_slowness_exceeds_cladding_phase_slowness() {
    for fiber in [single_mode_fiber(), few_mode_fiber()] {
        for lam in [0.5e-6, 0.532e-6, 0.65e-6, 0.820e-6, 1.0e-6] {
            let omega = omega_from_wavelength(lam);
            let s = sample(&fiber, ModeId::LP01, omega).unwrap();
            let n_clad = fiber.cladding_index(omega).unwrap();
            assert!(s.k_prime > n_clad / SPEED_OF_LIGHT);
            assert!(s.n_eff > n_clad && s.n_eff <= fiber.core_index(omega).unwrap());
            assert!((s.k - s.n_eff * omega / SPEED_OF_LIGHT).abs() < 1e-9 * s.k);
        }
    }
}

#[test]
fn group_slowness_reports_cutoff_inside_stencil() {
    let fiber = few_mode_fiber();
    // just above the LP21 cutoff the lower stencil point is not guided
    let v_cut = cutoff_v(ModeId::LP21);
    let lam = 2.0 * PI * fiber.core_radius * fiber.numerical_aperture / (v_cut * (1.0 + 1e-7));
    let err = group_slowness(&fiber, ModeId::LP21, omega_from_wavelength(lam)).unwrap_err();
    assert!(matches!(err, Error::ModeNotGuided { .. }), "{err:?}");
}

/// `∫_0^a J_l(ur/a)² r dr` and `∫_a^∞ K_l(wr/a)² r dr` in closed form.
fn analytic_power(l: u32, u: f64, w: f64, a: f64) -> f64 {
    let j = |n: i64| {
        if n < 0 {
            -bessel_j((-n) as u32, u).unwrap()
        } else {
            bessel_j(n as u32, u).unwrap()
        }
    };
    let k = |n: i64| bessel_k(n.unsigned_abs() as u32, w).unwrap();
    let l = l as i64;
    let core = 0.5 * a * a * (j(l).powi(2) - j(l - 1) * j(l + 1)) / j(l).powi(2);
    let clad = 0.5 * a * a * (k(l - 1) * k(l + 1) - k(l).powi(2)) / k(l).powi(2);
    let angular = if l == 0 { 2.0 * PI } else { PI };
    angular * (core + clad)
}

#[test]
fn profiles_have_unit_power() {
    let cases = [
        (single_mode_fiber(), ModeId::LP01, 0.820e-6),
        (single_mode_fiber(), ModeId::LP01, 0.532e-6),
        (few_mode_fiber(), ModeId::LP01, 0.820e-6),
        (few_mode_fiber(), ModeId::LP11, 0.820e-6),
        (few_mode_fiber(), ModeId::LP21, 0.820e-6),
        (few_mode_fiber(), ModeId::LP02, 0.820e-6),
        (few_mode_fiber(), ModeId::LP02, 0.532e-6),
    ];
    for (fiber, mode, lam) in cases {
        let p = mode_profile(&fiber, mode, lam).unwrap();
        let a = fiber.core_radius;
        // scale of the unnormalized field is fixed by R(a) = amplitude
        let amplitude = p.radial(a);
        let power = amplitude * amplitude * analytic_power(mode.l, p.u, p.w, a);
        assert!((power - 1.0).abs() < 1e-8, "{mode} at {lam}: {power}");
        // field is continuous across the interface
        let inside = p.radial(a * (1.0 - 1e-9));
        let outside = p.radial(a * (1.0 + 1e-9));
        assert!((inside - outside).abs() < 1e-6 * amplitude.abs());
    }
}

#[test]
fn profile_power_by_cartesian_quadrature() {
    let fiber = few_mode_fiber();
    let p = mode_profile(&fiber, ModeId::LP11, 0.820e-6).unwrap();
    let half = 8.0 * fiber.core_radius;
    let n = 400;
    let h = 2.0 * half / n as f64;
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            let x = -half + (i as f64 + 0.5) * h;
            let y = -half + (j as f64 + 0.5) * h;
            total += p.value(x, y).powi(2) * h * h;
        }
    }
    assert!((total - 1.0).abs() < 2e-3, "{total}");
}

#[test]
fn overlap_identities() {
    let fiber = single_mode_fiber();
    let lam = 0.820e-6;
    let s = overlap_self(&fiber, ModeId::LP01, lam).unwrap();
    let t = overlap_two(&fiber, ModeId::LP01, ModeId::LP01, [lam, lam]).unwrap();
    let f = overlap_four(&fiber, [ModeId::LP01; 4], [lam; 4]).unwrap();
    assert!(s > 0.0);
    assert!(((s - t) / s).abs() < 1e-14 && ((s - f) / s).abs() < 1e-14);

    let few = few_mode_fiber();
    let ab = overlap_two(&few, ModeId::LP01, ModeId::LP21, [0.820e-6, 0.532e-6]).unwrap();
    let ba = overlap_two(&few, ModeId::LP21, ModeId::LP01, [0.532e-6, 0.820e-6]).unwrap();
    assert_eq!(ab, ba);
    assert!(ab > 0.0);

    let fundamental = overlap_four(&few, [ModeId::LP01; 4], [0.820e-6; 4]).unwrap();
    let mixed = overlap_four(
        &few,
        [ModeId::LP11, ModeId::LP01, ModeId::LP01, ModeId::LP01],
        [0.820e-6; 4],
    )
    .unwrap();
    assert!(mixed < fundamental);
    // pairs of higher-order fields overlap with the fundamental pair
    let intermodal = overlap_four(
        &few,
        [ModeId::LP01, ModeId::LP11, ModeId::LP11, ModeId::LP01],
        [0.820e-6, 0.532e-6, 0.816e-6, 0.534e-6],
    )
    .unwrap();
    assert!(intermodal > 0.0 && intermodal < fundamental);
}

#[test]
fn self_overlap_matches_cartesian_integral() {
    let fiber = single_mode_fiber();
    let p = mode_profile(&fiber, ModeId::LP01, 0.532e-6).unwrap();
    let s = overlap_self(&fiber, ModeId::LP01, 0.532e-6).unwrap();
    // radial trapezoid on a fine grid as an independent check
    let rmax = 12.0 * fiber.core_radius;
    let n = 200_000;
    let h = rmax / n as f64;
    let mut total = 0.0;
    for i in 1..n {
        let r = i as f64 * h;
        total += p.radial(r).powi(4) * r;
    }
    total *= 2.0 * PI * h;
    assert!(((total - s) / s).abs() < 1e-6, "{total} vs {s}");
}

#[test]
fn table_matches_direct_evaluation() {
    let fiber = few_mode_fiber();
    let center = omega_from_wavelength(0.820e-6);
    let span = 2e13;
    let table = DispersionTable::new(&fiber, ModeId::LP11, center - span, center + span).unwrap();
    for i in 0..=8 {
        let omega = center - span + 2.0 * span * i as f64 / 8.0;
        let k = propagation_constant(&fiber, ModeId::LP11, omega).unwrap();
        assert!((table.k(omega) - k).abs() < 1e-6, "k at {i}");
        let kp = group_slowness(&fiber, ModeId::LP11, omega).unwrap();
        assert!(((table.k_prime(omega) - kp) / kp).abs() < 1e-7, "k' at {i}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn roots_satisfy_characteristic_equation(
        radius in 1.0e-6f64..4.0e-6,
        na in 0.08f64..0.3,
        lam in 0.45e-6f64..1.6e-6,
    ) {
        let fiber = FiberSpec::new(radius, na, 1.0).unwrap();
        let v = v_number(&fiber, lam).unwrap();
        let modes = solve_lp_modes(&fiber, lam).unwrap();
        prop_assert!(!modes.is_empty());
        prop_assert_eq!(modes[0].mode, ModeId::LP01);
        for m in &modes {
            prop_assert!(m.b > 0.0 && m.b < 1.0);
            prop_assert!(v > cutoff_v(m.mode));
            prop_assert!(characteristic_residual(m.mode.l, v, m.b).abs() < 1e-10);
        }
    }
}
