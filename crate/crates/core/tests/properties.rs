//! Property tests for the model invariants.

use proptest::prelude::*;

use cableloss::bench_io::{parse_cable_file, write_cable_file, ReportRow};
use cableloss::cable_model::{
    crossing_pitch, derive_geometry, lay_factor, CableSpec, ConductorMaterial, SheathMaterial,
};
use cableloss::corrections::{
    armor_presence_correction, correction_factors, sheath_eddy_correction,
    sheath_equivalent_resistance, CorrectionFactors,
};
use cableloss::em_pipeline::{
    improved_em_with_factors, legacy_em, original_em, EmConfig, TestMeasurements,
};
use cableloss::iec60287::lambda1_prime;
use cableloss::mesh_oracle::{oracle_lambda1, PhasorSystem};

fn arbitrary_measurements() -> impl Strategy<Value = TestMeasurements> {
    (
        0.0..50.0_f64,   // p_m0
        -5.0..50.0_f64,  // delta added to get p_m1 (may be negative)
        1.0..2000.0_f64, // i_c
        0.0..300.0_f64,  // i_s0
        0.0..300.0_f64,  // i_s1
        1e-6..1e-3_f64,  // r_c_dc
        1e-5..5e-3_f64,  // r_s_dc
        1e-5..1e-3_f64,  // r_a_dc
        0.0..0.3_f64,    // y_s
        0.0..0.2_f64,    // y_p
    )
        .prop_map(
            |(p_m0, delta, i_c, i_s0, i_s1, r_c_dc, r_s_dc, r_a_dc, y_s, y_p)| TestMeasurements {
                p_m0,
                p_m1: p_m0 + delta,
                i_c0: i_c,
                i_c1: i_c,
                i_s0,
                i_s1,
                r_c_dc,
                r_s_dc,
                r_a_dc,
                theta_test: 20.0,
                y_s,
                y_p,
                conductor_temp: None,
                sheath_temp: None,
                armor_temp: None,
            },
        )
}

/// Specs drawn inside the validity envelope of the invariants.
fn arbitrary_spec() -> impl Strategy<Value = CableSpec> {
    (
        10.0..100.0_f64, // c mm
        1.2..3.0_f64,    // d_s/c ratio keeps 2s/d > 1 comfortably
        0.02..0.12_f64,  // t_s as a fraction of d_s
        2.0..8.0_f64,    // d_a mm
        1.5..4.0_f64,    // D_a as multiple of 2c
        30u32..250u32,   // n wires
        0.8..4.5_f64,    // L_c m
        0.8..5.5_f64,    // L_a m
        1.0..800.0_f64,  // mu'
        0.0..400.0_f64,  // mu''
    )
        .prop_map(
            |(c, ds_ratio, ts_frac, d_a, da_ratio, n, l_c, l_a, mu_r, mu_i)| {
                let d_s = ds_ratio * c;
                CableSpec {
                    voltage_kv: 100.0,
                    rated_current: 500.0,
                    conductor_diameter: 0.5 * c * 1e-3,
                    sheath_outer_diameter: d_s * 1e-3,
                    sheath_thickness: ts_frac * d_s * 1e-3,
                    core_center_radius: c * 1e-3,
                    armor_wire_diameter: d_a * 1e-3,
                    armor_mean_diameter: da_ratio * 2.0 * c * 1e-3,
                    armor_wire_count: n,
                    conductor_lay_length: l_c,
                    armor_lay_length: l_a,
                    conductor_material: ConductorMaterial::Copper,
                    sheath_material: SheathMaterial::Lead,
                    armor_mu_real: mu_r,
                    armor_mu_imag: mu_i,
                    cross_section: 500.0e-6,
                }
            },
        )
}

proptest! {
    #[test]
    fn crossing_pitch_symmetric_and_below_min(a in 0.1..10.0_f64, b in 0.1..10.0_f64) {
        let ab = crossing_pitch(a, b).unwrap();
        let ba = crossing_pitch(b, a).unwrap();
        prop_assert_eq!(ab.to_bits(), ba.to_bits());
        prop_assert!(ab < a.min(b));
    }

    #[test]
    fn lay_factor_monotonicities(
        c in 0.0..0.2_f64,
        dc in 1e-4..0.05_f64,
        l in 0.5..5.0_f64,
        dl in 0.01..2.0_f64,
    ) {
        prop_assert!(lay_factor(c, l) >= 1.0);
        // increasing in c
        prop_assert!(lay_factor(c + dc, l) > lay_factor(c, l) || c == 0.0 && dc == 0.0);
        // decreasing in L_c (strictly, for c > 0)
        if c > 0.0 {
            prop_assert!(lay_factor(c, l + dl) < lay_factor(c, l));
        }
    }

    #[test]
    fn lambda1_prime_monotone_in_reactance(
        r_s in 1e-5..5e-3_f64,
        r_c in 1e-6..1e-3_f64,
        x in 1e-6..1e-3_f64,
        dx in 1e-7..1e-3_f64,
    ) {
        let lo = lambda1_prime(r_s, r_c, x);
        let hi = lambda1_prime(r_s, r_c, x + dx);
        prop_assert!(hi > lo);
        // saturation bound
        prop_assert!(hi <= 1.5 * r_s / r_c);
    }

    #[test]
    fn difference_identity_exact_for_all_methods(m in arbitrary_measurements(), l1pp in 0.0..0.1_f64) {
        let cfg = EmConfig::default();
        let results = [
            original_em(&m, &cfg).unwrap(),
            legacy_em(&m, l1pp, &cfg).unwrap(),
            improved_em_with_factors(&m, CorrectionFactors {
                f_c: 1.7, y_c: 0.25, y_a: 0.03, flags: Vec::new(),
            }, &cfg).unwrap(),
        ];
        for r in results {
            let recomposed = r.delta_p_m - r.delta_p_c_j - r.delta_p_s_j - r.delta_p_s_ec;
            prop_assert_eq!(r.p_a.to_bits(), recomposed.to_bits());
        }
    }

    #[test]
    fn improved_sheath_term_monotone(
        m in arbitrary_measurements(),
        y_a in 0.0..0.2_f64,
        bump in 1e-4..0.2_f64,
    ) {
        let cfg = EmConfig::default();
        let factors = |ya| CorrectionFactors { f_c: 1.5, y_c: 0.2, y_a: ya, flags: Vec::new() };
        if m.i_s1 > 0.0 {
            let base = improved_em_with_factors(&m, factors(y_a), &cfg).unwrap();
            let more = improved_em_with_factors(&m, factors(y_a + bump), &cfg).unwrap();
            prop_assert!(more.delta_p_s_j > base.delta_p_s_j);
            let mut m2 = m.clone();
            m2.i_s1 += 1.0;
            let higher_current = improved_em_with_factors(&m2, factors(y_a), &cfg).unwrap();
            prop_assert!(higher_current.delta_p_s_j > base.delta_p_s_j);
        }
    }

    #[test]
    fn y_c_decreasing_in_spacing_ratio(
        d_c in 5.0..60.0_f64,
        d in 20.0..120.0_f64,
        lf in 1.0..1.05_f64,
        s in 15.0..200.0_f64,
        ds in 0.1..50.0_f64,
    ) {
        // larger s/d (all else fixed) must reduce y_c
        prop_assume!(2.0 * s > d);
        let base = sheath_eddy_correction(lf, d_c, d, s);
        let wider = sheath_eddy_correction(lf, d_c, d, s + ds);
        prop_assert!(wider < base);
        prop_assert!(base > 0.0);
    }

    #[test]
    fn y_a_monotonicities(
        cp in 0.1..3.0_f64,
        dcp in 0.01..1.0_f64,
        mu in 1.0..800.0_f64,
        dmu in 0.1..200.0_f64,
    ) {
        let base = armor_presence_correction(cp, mu);
        prop_assert!(armor_presence_correction(cp, mu + dmu) > base);
        prop_assert!(armor_presence_correction(cp + dcp, mu) < base);
    }

    #[test]
    fn armored_equivalent_resistance_ordering(
        r in 1e-5..5e-3_f64,
        y_c in 0.0..0.5_f64,
        y_a in -0.1..0.3_f64,
    ) {
        let unarmored = sheath_equivalent_resistance(r, y_c, y_a, false);
        let armored = sheath_equivalent_resistance(r, y_c, y_a, true);
        prop_assert_eq!(armored >= unarmored, y_a >= 0.0);
    }

    #[test]
    fn correction_factors_flags_match_values(spec in arbitrary_spec()) {
        let geom = derive_geometry(&spec).unwrap();
        let corr = correction_factors(&spec, &geom);
        let flagged_fc = corr.flags.iter().any(|w| w.to_string().starts_with("f_c"));
        let flagged_ya = corr.flags.iter().any(|w| w.to_string().starts_with("y_a"));
        prop_assert_eq!(flagged_fc, corr.f_c < 1.0);
        prop_assert_eq!(flagged_ya, corr.y_a < 0.0);
        prop_assert!(corr.y_c > 0.0);
    }

    #[test]
    fn derive_geometry_is_pure(spec in arbitrary_spec()) {
        let a = derive_geometry(&spec).unwrap();
        let b = derive_geometry(&spec).unwrap();
        prop_assert_eq!(a, b);
        prop_assert!(a.crossing_pitch < spec.conductor_lay_length.min(spec.armor_lay_length));
        prop_assert!(a.lay_factor >= 1.0);
    }

    #[test]
    fn oracle_zero_sum_and_reference_invariance(
        r_s in 1e-5..5e-3_f64,
        s_mm in 20.0..200.0_f64,
        ratio in 1.05..4.0_f64,
        i_c in 10.0..2000.0_f64,
        reference in 1e-3..100.0_f64,
    ) {
        let omega = 2.0 * std::f64::consts::PI * 50.0;
        let d = 2.0 * s_mm / ratio * 1e-3; // keeps 2s/d = ratio > 1
        let s = s_mm * 1e-3;
        let sys = PhasorSystem::balanced(r_s, omega, s, d, i_c);
        let base = sys.solve().unwrap();
        let sum: num_complex::Complex64 = base.iter().sum();
        prop_assert!(sum.norm() <= 1e-9 * i_c);
        let moved = sys.solve_with_reference(reference).unwrap();
        for (a, b) in base.iter().zip(moved.iter()) {
            prop_assert!((a - b).norm() <= 1e-8 * i_c);
        }
    }

    #[test]
    fn oracle_ratio_constant(
        s_mm in 20.0..200.0_f64,
        dratio in 1.05..4.0_f64,
        rs_over_x in 0.05..5.0_f64,
        r_c in 1e-6..1e-3_f64,
    ) {
        let omega = 2.0 * std::f64::consts::PI * 50.0;
        let s = s_mm * 1e-3;
        let d = 2.0 * s / dratio;
        let (x, _) = cableloss::iec60287::sheath_reactance(omega, s, d);
        let r_s = rs_over_x * x;
        let oracle = oracle_lambda1(r_s, r_c, omega, s, d).unwrap();
        let standard = lambda1_prime(r_s, r_c, x);
        prop_assert!((oracle / standard / (2.0 / 3.0) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn cable_file_round_trip(spec in arbitrary_spec(), freq in 10.0..400.0_f64, temp in -10.0..60.0_f64) {
        let file = cableloss::bench_io::CableFile {
            spec,
            materials: cableloss::iec60287::CableMaterials {
                r_c_dc_20_override: Some(1.2345e-4),
                ..cableloss::iec60287::CableMaterials::for_spec(&crate_spec_placeholder())
            },
            operating: cableloss::iec60287::OperatingPoint {
                frequency: freq,
                ambient_temp: temp,
                conductor_current: 321.5,
            },
            measurements: None,
            load_warnings: Vec::new(),
        };
        let text = write_cable_file(&file);
        let parsed = parse_cable_file(&text, "round-trip").unwrap();
        prop_assert_eq!(&parsed.spec, &file.spec);
        prop_assert_eq!(&parsed.operating, &file.operating);
        prop_assert_eq!(&parsed.materials, &file.materials);
    }

    #[test]
    fn report_row_json_round_trip(
        lambda2 in proptest::option::of(-1.0..5.0_f64),
        p_a in proptest::option::of(-10.0..100.0_f64),
        warning in ".{0,40}",
    ) {
        let mut row = ReportRow::empty("cable-x", "iec");
        row.lambda2 = lambda2;
        row.p_a_w_m = p_a;
        row.warnings = vec![warning];
        let text = serde_json::to_string(&row).unwrap();
        let back: ReportRow = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(row, back);
    }
}

fn crate_spec_placeholder() -> CableSpec {
    CableSpec {
        voltage_kv: 1.0,
        rated_current: 1.0,
        conductor_diameter: 1e-2,
        sheath_outer_diameter: 3e-2,
        sheath_thickness: 2e-3,
        core_center_radius: 2e-2,
        armor_wire_diameter: 4e-3,
        armor_mean_diameter: 9e-2,
        armor_wire_count: 50,
        conductor_lay_length: 1.0,
        armor_lay_length: 1.0,
        conductor_material: ConductorMaterial::Copper,
        sheath_material: SheathMaterial::Lead,
        armor_mu_real: 1.0,
        armor_mu_imag: 0.0,
        cross_section: 1e-4,
    }
}
