//! Cross-module invariants, checked on random inputs.

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use ccqed_core::coupling::{coupling_avg_sq, coupling_oriented_sq, CouplingConstant};
use ccqed_core::estimates::{chiral_shift, vacuum_rabi};
use ccqed_core::linalg::eigh_jacobi;
use ccqed_core::mode_field::{mode_profile, CavityMode, Handedness};
use ccqed_core::molecule::ChiralMolecule;
use ccqed_core::single_mode::{cp_force, eigensystem, jc_matrix, rabi_frequency, Branch, JcBlock};
use ccqed_core::two_mode::{nondegenerate_spectrum, scenario_pair, two_mode_matrix, Scenario, TwoModeBlock};
use ccqed_core::units::{convert_frequency, debye_to_si, oscillator_strength_to_dipole, FrequencyUnit, HBAR};

fn handedness() -> impl Strategy<Value = Handedness> {
    prop_oneof![Just(Handedness::Right), Just(Handedness::Left)]
}

fn unit() -> impl Strategy<Value = FrequencyUnit> {
    prop_oneof![
        Just(FrequencyUnit::Hz),
        Just(FrequencyUnit::RadPerSecond),
        Just(FrequencyUnit::Wavenumber),
        Just(FrequencyUnit::ElectronVolt),
        Just(FrequencyUnit::Wavelength),
    ]
}

proptest! {
    #[test]
    fn frequency_round_trip(value in 1e-6f64..1e18, unit in unit()) {
        let f = convert_frequency(value, unit).unwrap();
        prop_assert!((f.to_unit(unit) - value).abs() <= 1e-12 * value);
    }

    #[test]
    fn dipole_from_oscillator_strength_scaling(f in 1e-4f64..1.0, omega in 1e12f64..1e17, scale in 1.1f64..10.0) {
        let d = oscillator_strength_to_dipole(f, omega).unwrap().magnitude().powi(2);
        let df = oscillator_strength_to_dipole(scale * f, omega).unwrap().magnitude().powi(2);
        let dw = oscillator_strength_to_dipole(f, scale * omega).unwrap().magnitude().powi(2);
        prop_assert!((df / d - scale).abs() <= 1e-12 * scale);
        prop_assert!((dw * scale / d - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn profile_handedness_reflection(z in -1e-3f64..1e-3, k in 1e3f64..1e7) {
        let r = mode_profile(z, k, Handedness::Right);
        let l = mode_profile(z, k, Handedness::Left);
        prop_assert_eq!(r[0], l[0]);
        prop_assert_eq!(r[1], -l[1]);
        prop_assert_eq!(r[2], 0.0);
    }

    #[test]
    fn enantio_exchange_symmetry(chi in -1.0f64..=1.0, hand in handedness(), z in 0.0f64..1e-3) {
        let omega = 2.0 * PI * 1e11;
        let m = ChiralMolecule::new("m", omega, debye_to_si(1.0).unwrap(), chi).unwrap();
        let mode = CavityMode::new(omega, hand, 3.4e-9).unwrap();
        prop_assert_eq!(coupling_avg_sq(&m, &mode), coupling_avg_sq(&m.enantiomer(), &mode.mirrored()));
        prop_assert_eq!(coupling_oriented_sq(&m, &mode, z), coupling_oriented_sq(&m.enantiomer(), &mode.mirrored(), z));
    }

    #[test]
    fn trace_preservation(n in 0u32..50, omega in 0.5f64..5.0, delta in -1.0f64..1.0, g in 0.0f64..0.5, phase in 0.0f64..6.283) {
        let block = JcBlock::new(n, omega, omega + delta, CouplingConstant::new(Complex64::from_polar(g, phase)));
        let es = eigensystem(&block).unwrap();
        let sum: f64 = es.energies.iter().sum();
        let expected = (2.0 * f64::from(n) + 1.0) * HBAR * omega;
        prop_assert!((sum - expected).abs() <= 1e-12 * expected);
        prop_assert!((es.energies[0] - es.energies[1] - HBAR * es.rabi).abs() <= 1e-12 * expected);
        prop_assert!(es.rabi >= delta.abs());
    }

    #[test]
    fn matched_handedness_raises_rabi(chi in 0.001f64..=1.0) {
        let omega = 2.0 * PI * 3.2e13;
        let m = ChiralMolecule::new("m", omega, debye_to_si(0.17).unwrap(), chi).unwrap();
        let right = CavityMode::new(omega, Handedness::Right, 1.1e-16).unwrap();
        let rabi = |mode: &CavityMode| rabi_frequency(&JcBlock::new(0, omega, omega, CouplingConstant::real(coupling_avg_sq(&m, mode).sqrt())));
        prop_assert!(rabi(&right) > rabi(&right.mirrored()));
    }

    #[test]
    fn chiral_shift_is_rabi_times_sqrt_chi(nu in 1e9f64..1e16, d in 0.01f64..5.0, chi in 0.0f64..=1.0, v in 1e-24f64..1e-6) {
        let dip = debye_to_si(d).unwrap();
        let omega = vacuum_rabi(nu, dip, v).unwrap();
        let shift = chiral_shift(nu, dip, chi, v).unwrap();
        prop_assert!((shift - omega * chi.sqrt()).abs() <= 1e-12 * omega);
    }

    #[test]
    fn scenario_spectra_match_eigensolver(
        scenario in prop_oneof![
            Just(Scenario::Degenerate),
            (0.0f64..0.99).prop_map(|r| Scenario::Imperfect { amplitude_ratio: r }),
            Just(Scenario::NearDegenerate),
        ],
        chi in -1.0f64..=1.0,
        n in 0u32..10,
        delta in -0.3f64..0.3,
        g in 0.0f64..0.2,
    ) {
        let chi = if scenario == Scenario::Degenerate { 0.0 } else { chi };
        let (g1, g2) = scenario_pair(scenario, g, chi, Handedness::Right).unwrap();
        let block = TwoModeBlock::equal_modes(n, 1.0, 1.0 + delta, g1, g2);
        let s = nondegenerate_spectrum(&block).unwrap();
        let mut analytic = [s.e1, s.e2, s.e3];
        analytic.sort_by(f64::total_cmp);
        let numeric = eigh_jacobi(&two_mode_matrix(&block)).unwrap().values;
        for (a, b) in analytic.iter().zip(&numeric) {
            prop_assert!((a - b).abs() <= 1e-12 * b.abs());
        }
    }

    #[test]
    fn imperfect_rabi_grows_with_weak_mode(r1 in 0.0f64..0.98, dr in 0.001f64..0.01, chi in -1.0f64..=1.0) {
        prop_assume!(chi > -1.0);
        let rabi = |r: f64| {
            let (g1, g2) = scenario_pair(Scenario::Imperfect { amplitude_ratio: r }, 0.1, chi, Handedness::Right).unwrap();
            nondegenerate_spectrum(&TwoModeBlock::equal_modes(0, 1.0, 1.05, g1, g2)).unwrap().rabi
        };
        prop_assert!(rabi(r1 + dr) > rabi(r1) || chi == 1.0);
    }
}

#[test]
fn estimate_matches_coupling_path() {
    // Omega from the estimate formula equals 2 |g| from the averaged coupling at resonance.
    for (nu, d, v) in [(1.0e11, 1.72, 3.4e-9), (3.2e13, 0.17, 1.1e-16), (1.8e15, 0.77, 6.1e-22)] {
        let omega = 2.0 * PI * nu;
        let dip = debye_to_si(d).unwrap();
        let m = ChiralMolecule::new("m", omega, dip, 0.0).unwrap();
        let mode = CavityMode::new(omega, Handedness::Right, v).unwrap();
        let g = coupling_avg_sq(&m, &mode).sqrt();
        let via_block = rabi_frequency(&JcBlock::new(0, omega, omega, CouplingConstant::real(g)));
        let direct = vacuum_rabi(nu, dip, v).unwrap();
        assert!((via_block - direct).abs() <= 1e-12 * direct, "{via_block} vs {direct}");
    }
}

#[test]
fn force_is_periodic_and_odd_about_antinodes() {
    let omega = 2.0 * PI * 1e11;
    let m = ChiralMolecule::new("m", omega, debye_to_si(1.72).unwrap(), 0.05).unwrap();
    let mode = CavityMode::new(omega - 400.0, Handedness::Right, 3.4e-9).unwrap();
    let k = mode.k();
    let max = (0..400)
        .map(|i| cp_force(&m, &mode, 0, i as f64 * PI / k / 400.0, Branch::Upper).abs())
        .fold(0.0, f64::max);
    for i in 0..100 {
        let delta = 0.013 * i as f64 / k;
        for z0 in [0.0, PI / k, 2.0 * PI / k] {
            let plus = cp_force(&m, &mode, 0, z0 + delta, Branch::Upper);
            let minus = cp_force(&m, &mode, 0, z0 - delta, Branch::Upper);
            assert!((plus + minus).abs() <= 1e-9 * max, "odd symmetry at z0={z0}");
        }
        let z = delta;
        let shifted = cp_force(&m, &mode, 0, z + 2.0 * PI / k, Branch::Upper);
        assert!((shifted - cp_force(&m, &mode, 0, z, Branch::Upper)).abs() <= 1e-9 * max);
    }
}

#[test]
fn resonant_force_handedness_ratio() {
    let omega = 2.0 * PI * 1e11;
    let chi: f64 = 0.2;
    let m = ChiralMolecule::new("m", omega, debye_to_si(1.72).unwrap(), chi).unwrap();
    let right = CavityMode::new(omega, Handedness::Right, 3.4e-9).unwrap();
    let left = right.mirrored();
    let k = right.k();
    for i in 1..50 {
        let z = i as f64 * 0.03 / k;
        let fr = cp_force(&m, &right, 0, z, Branch::Upper).abs();
        let fl = cp_force(&m, &left, 0, z, Branch::Upper).abs();
        assert!(fr >= fl);
        // The resonant force is linear in |1 ± chi|.
        assert!((fr / fl - (1.0 + chi) / (1.0 - chi)).abs() < 1e-12);
    }
}

#[test]
fn block_matrices_are_hermitian_for_complex_couplings() {
    let g = CouplingConstant::new(Complex64::new(0.3, -0.7));
    let h = jc_matrix(&JcBlock::new(1, 2.0, 2.1, g));
    assert_eq!(h.get(0, 1), h.get(1, 0).conj());
}
