use proptest::prelude::*;
use steerlab::channel::{amplitude_damp, measure_reverse, weak_measure, Target};
use steerlab::measures::{
    bures_fidelity, concurrence, concurrence_x, conditional_entropy_sum, steering_of,
};
use steerlab::protocol::{composed_form_case_b, evolve, Case};
use steerlab::qstate::{bloch_from_x, to_x_params, validate, werner, X_PATTERN_TOL};
use steerlab::XStateParams;

fn x_params() -> impl Strategy<Value = XStateParams> {
    (
        prop::array::uniform4(0.01f64..1.0),
        -1.0f64..1.0,
        -1.0f64..1.0,
    )
        .prop_map(|(w, a, b)| {
            let sum: f64 = w.iter().sum();
            let [r11, r22, r33, r44] = w.map(|v| v / sum);
            XStateParams {
                rho11: r11,
                rho22: r22,
                rho33: r33,
                rho44: r44,
                rho14: a * (r11 * r44).sqrt(),
                rho23: b * (r22 * r33).sqrt(),
            }
        })
}

fn unit_open() -> impl Strategy<Value = f64> {
    0.0f64..0.99
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn x_params_round_trip(x in x_params()) {
        let back = to_x_params(&x.to_density(), X_PATTERN_TOL).unwrap();
        prop_assert!((back.rho11 - x.rho11).abs() < 1e-15);
        prop_assert!((back.rho14 - x.rho14).abs() < 1e-15);
        prop_assert!((back.rho23 - x.rho23).abs() < 1e-15);
    }

    #[test]
    fn bloch_round_trip(x in x_params()) {
        let back = bloch_from_x(&x).to_x_params();
        for (a, b) in back.populations().iter().zip(x.populations()) {
            prop_assert!((a - b).abs() < 1e-14);
        }
        prop_assert!((back.rho14 - x.rho14).abs() < 1e-14);
        prop_assert!((back.rho23 - x.rho23).abs() < 1e-14);
    }

    #[test]
    fn concurrence_forms_agree(x in x_params()) {
        let c = concurrence(&x.to_density()).unwrap();
        prop_assert!((c - concurrence_x(&x)).abs() < 1e-9);
    }

    #[test]
    fn entropy_identity(x in x_params()) {
        let rho = x.to_density();
        let si = steering_of(&rho).unwrap().si;
        prop_assert!((si - (6.0 - 2.0 * conditional_entropy_sum(&rho))).abs() < 1e-9);
    }

    #[test]
    fn fidelity_symmetric_and_bounded(a in x_params(), b in x_params()) {
        let (ra, rb) = (a.to_density(), b.to_density());
        let fab = bures_fidelity(&ra, &rb).unwrap();
        let fba = bures_fidelity(&rb, &ra).unwrap();
        prop_assert!((fab - fba).abs() < 1e-9);
        prop_assert!((0.0..=1.0).contains(&fab));
        prop_assert!((bures_fidelity(&ra, &ra).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn channel_outputs_valid(x in x_params(), g in 0.0f64..=1.0, m in unit_open()) {
        let rho = x.to_density();
        for target in [Target::A, Target::B, Target::Both] {
            let damped = amplitude_damp(&rho, target, g).unwrap();
            prop_assert!(validate(&damped).is_valid(1e-10));
            let wm = weak_measure(&rho, target, m).unwrap();
            prop_assert!(validate(&wm.state).is_valid(1e-10));
            let back = measure_reverse(&wm.state, target, m).unwrap();
            prop_assert!((back.state.matrix() - rho.matrix()).max_abs() < 1e-12);
        }
    }

    #[test]
    fn protocol_measures_in_range(
        p in 0.0f64..=1.0, m in unit_open(), mr in unit_open(), g in 0.0f64..=1.0,
    ) {
        for case in [Case::A, Case::B] {
            let out = evolve(case, p, m, mr, g).unwrap();
            prop_assert!(validate(&out.state).is_valid(1e-10));
            prop_assert!(out.success_prob > 0.0 && out.success_prob <= 1.0);
            let c = concurrence(&out.state).unwrap();
            let s = steering_of(&out.state).unwrap().s;
            let f = bures_fidelity(&werner(p).unwrap(), &out.state).unwrap();
            for v in [c, s, f] {
                prop_assert!((0.0..=1.0).contains(&v));
            }
        }
    }

    #[test]
    fn composed_case_b_is_exact(
        p in 0.0f64..=1.0, m in unit_open(), mr in unit_open(), g in 0.0f64..=1.0,
    ) {
        let oracle = to_x_params(&evolve(Case::B, p, m, mr, g).unwrap().state, X_PATTERN_TOL).unwrap();
        let x = composed_form_case_b(p, m, mr, g).unwrap();
        for (a, b) in x.populations().iter().zip(oracle.populations()) {
            prop_assert!((a - b).abs() < 1e-10);
        }
        prop_assert!((x.rho23 - oracle.rho23).abs() < 1e-10);
    }
}
