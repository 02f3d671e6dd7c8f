use hpdiv_core::divergence::DivergenceSpec;
use hpdiv_core::hpd::functions::FunctionKind;
use hpdiv_core::hpd::io::{matrix_from_json, matrix_to_json};
use hpdiv_core::hpd::matrix::HermitianMatrix;
use hpdiv_core::hpd::random::{random_hpd, random_unitary, rng_from_seed, HpdGenConfig};
use hpdiv_core::metric::{hollow, is_cnd_3x3, sqrt_triangle};
use proptest::prelude::*;

fn symmetric_specs() -> Vec<DivergenceSpec> {
    vec![
        DivergenceSpec::SDiv,
        DivergenceSpec::Qjsd,
        DivergenceSpec::QjsdAlpha(0.5),
        DivergenceSpec::QjsdAlpha(1.5),
        DivergenceSpec::DeltaAlpha(0.75),
        DivergenceSpec::DeltaAlpha(2.0),
        DivergenceSpec::Jensen(FunctionKind::XLogX),
        DivergenceSpec::Jensen(FunctionKind::NegLog),
    ]
}

fn pair(dim: usize, seed: u64, unit: bool) -> (HermitianMatrix, HermitianMatrix) {
    let g = |s| random_hpd(&HpdGenConfig::new(dim, s).with_unit_trace(unit)).unwrap();
    (g(seed), g(seed ^ 0x9e37_79b9))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symmetric_and_nonnegative(dim in 1usize..6, seed in any::<u64>()) {
        let (x, y) = pair(dim, seed, false);
        for spec in symmetric_specs() {
            let a = spec.evaluate(&x, &y).unwrap();
            let b = spec.evaluate(&y, &x).unwrap();
            prop_assert!(a >= -1e-12 * (1.0 + a.abs()), "{spec}: {a}");
            prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0), "{spec}: {a} vs {b}");
        }
    }

    #[test]
    fn bregman_kinds_are_nonnegative(dim in 1usize..6, seed in any::<u64>()) {
        let (x, y) = pair(dim, seed, false);
        for spec in [DivergenceSpec::BregmanVn, DivergenceSpec::BregmanLogDet, DivergenceSpec::BregmanFrobenius] {
            let d = spec.evaluate(&x, &y).unwrap();
            prop_assert!(d >= -1e-12 * (1.0 + d.abs()), "{spec}: {d}");
            prop_assert!(spec.evaluate(&x, &x).unwrap().abs() <= 1e-12 * x.trace().max(1.0));
        }
    }

    #[test]
    fn renyi_version_nonnegative_on_states(dim in 1usize..6, seed in any::<u64>(), alpha in 0.05f64..0.95) {
        let (x, y) = pair(dim, seed, true);
        let d = DivergenceSpec::QjrdAlpha(alpha).evaluate_checked(&x, &y).unwrap();
        prop_assert!(d >= -1e-13, "{d}");
    }

    #[test]
    fn unitary_invariance(dim in 2usize..6, seed in any::<u64>()) {
        let (x, y) = pair(dim, seed, false);
        let u = random_unitary(dim, &mut rng_from_seed(seed.wrapping_add(1)));
        let (ux, uy) = (x.conjugate_by(&u), y.conjugate_by(&u));
        for spec in symmetric_specs() {
            let a = spec.evaluate(&x, &y).unwrap();
            let b = spec.evaluate(&ux, &uy).unwrap();
            prop_assert!((a - b).abs() <= 1e-10 * a.abs().max(1.0), "{spec}: {a} vs {b}");
        }
    }

    #[test]
    fn scalar_sdiv_matches_closed_form(x in 1e-3f64..1e3, y in 1e-3f64..1e3) {
        let d = DivergenceSpec::SDiv
            .evaluate(&HermitianMatrix::diagonal(&[x]).unwrap(), &HermitianMatrix::diagonal(&[y]).unwrap())
            .unwrap();
        let want = (0.5 * (x + y)).ln() - 0.5 * x.ln() - 0.5 * y.ln();
        prop_assert!((d - want).abs() <= 1e-12 * want.abs().max(1.0));
    }

    #[test]
    fn matrix_json_round_trips_bitwise(dim in 1usize..6, seed in any::<u64>()) {
        let (x, _) = pair(dim, seed, false);
        let back = matrix_from_json(&matrix_to_json(&x)).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn cnd_iff_sqrt_triangle(a in 0.0f64..10.0, b in 0.0f64..10.0, c in 0.0f64..10.0) {
        let m = hollow(a, b, c);
        prop_assert_eq!(is_cnd_3x3(&m, 1e-10).unwrap(), sqrt_triangle(&m, 1e-10));
    }
}
