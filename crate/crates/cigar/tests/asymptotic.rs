use cigar::asymptotic::*;
use cigar::green::{green_eval, GreenQuery, QuadratureConfig};
use proptest::prelude::*;

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

#[test]
fn both_forms_of_i_agree() {
    let mut worst = 0.0f64;
    for eta in [3.0, 5.0, 8.0] {
        for a in [0.0, 1.0, 3.0] {
            for y in [0.5, 1.0, 2.0] {
                let s = i_eta(eta, a, y, IForm::Spectral, &cfg()).unwrap();
                let l = i_eta(eta, a, y, IForm::Laplace, &cfg()).unwrap();
                worst = worst.max((s / l - 1.0).abs());
            }
        }
    }
    assert!(worst < 1e-6, "{worst:e}");
}

#[test]
fn i_needs_eta_above_y() {
    assert!(i_eta(1.0, 0.0, 2.0, IForm::Laplace, &cfg()).is_err());
    assert!(i_eta(3.0, -1.0, 1.0, IForm::Spectral, &cfg()).is_err());
}

#[test]
fn watson_limit_of_i() {
    // I(η)e^{η/2}η^{1/2} approaches its limit like 1 + O(1/η)
    let y = 1.0;
    let gap = |eta: f64| {
        let i = i_eta(eta, 0.0, y, IForm::Laplace, &cfg()).unwrap();
        (i * (0.5 * eta).exp() * eta.sqrt() / watson_limit(y) - 1.0).abs()
    };
    let (g10, g40) = (gap(10.0), gap(40.0));
    assert!(g40 < g10 && g40 < 0.05, "{g10} {g40}");
}

#[test]
fn small_eta_exponent() {
    let r = compare_sweep(&Regime::Eta0 { x: 0.0, y: 1.0, xi: 0.5 }, &[1e-2, 1e-3, 1e-4], &cfg()).unwrap();
    let slope = r[0].fitted_rate;
    assert!((1.47..=1.53).contains(&slope), "{slope}");
    assert!((r[2].ratio - 1.0).abs() < 1e-9);
}

#[test]
fn small_eta_coefficient_diverges_on_the_vertical() {
    assert!(matches!(eta0_coefficient(1.0, 1.0, 1.0, &cfg()), Err(cigar::Error::Divergent(_))));
}

#[test]
fn large_eta_ratio_tends_to_one() {
    let r = compare_sweep(&Regime::EtaInf { x: 0.0, y: 1.0, xi: 0.5 }, &[4.0, 6.0, 8.0, 16.0], &cfg()).unwrap();
    for w in r.windows(2) {
        assert!((w[1].ratio - 1.0).abs() < (w[0].ratio - 1.0).abs());
    }
    // remainder is O(1/η)
    let order = remainder_order(&r);
    assert!((-1.3..=-0.7).contains(&order), "{order}");
}

#[test]
fn large_eta_prediction_ignores_abscissae() {
    let a = predict_eta_inf(0.0, 1.0, 3.0, 6.0).unwrap();
    let b = predict_eta_inf(-2.0, 1.0, 0.5, 6.0).unwrap();
    assert_eq!(a, b);
}

#[test]
fn ray_rates() {
    let grid: Vec<f64> = (0..=10).map(|i| 20.0 + 2.0 * i as f64).collect();
    for m in [0.5, 1.0, 2.0] {
        for side in [1.0, -1.0] {
            let ray = RayParams::new(m, side).unwrap();
            let r = compare_sweep(&Regime::Ray { x: 0.3, y: 1.0, ray }, &grid, &cfg()).unwrap();
            let rate = -r[0].fitted_rate;
            assert!((rate / ray.rate() - 1.0).abs() < 0.01, "m={m} side={side}: {rate}");
            assert!((r[10].ratio - 1.0).abs() < 0.02, "m={m}: {}", r[10].ratio);
            assert_eq!(r[0].parameter, side * 20.0);
        }
    }
}

#[test]
fn ray_rejects_wrong_side() {
    let ray = RayParams::new(1.0, 1.0).unwrap();
    assert!(predict_ray(ray, 0.0, 1.0, -3.0).is_err());
    assert!(RayParams::new(-1.0, 1.0).is_err());
    assert!(RayParams::new(1.0, 0.5).is_err());
}

#[test]
fn saddle_ingredients_match_closed_forms() {
    for m in [0.5, 1.0, 2.0] {
        let ray = RayParams::new(m, 1.0).unwrap();
        let s = saddle_check(ray, 0.2, 0.8).unwrap();
        // central differences with h = 1e-4 next to the branch point ±i/2
        assert!(s.phi1_fd.norm() < 1e-5 * s.phi2_closed.abs(), "{:?}", s.phi1_fd);
        assert!((s.phi2_fd.re / s.phi2_closed - 1.0).abs() < 1e-5);
        assert!((s.b0_local.re / s.b0_closed - 1.0).abs() < 1e-10);
        assert!((s.leading_local / s.leading_closed - 1.0).abs() < 1e-5);
    }
}

#[test]
fn sweep_matches_direct_evaluation() {
    let r = compare_sweep(&Regime::EtaInf { x: 0.0, y: 1.0, xi: 0.5 }, &[5.0], &cfg()).unwrap();
    let direct = green_eval(&GreenQuery::new(0.0, 1.0, 0.5, 5.0).unwrap(), &cfg()).unwrap().value;
    assert_eq!(r[0].numeric, direct);
    assert!(r[0].fitted_rate.is_nan());
    assert!(compare_sweep(&Regime::EtaInf { x: 0.0, y: 1.0, xi: 0.5 }, &[], &cfg()).unwrap().is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn fit_slope_recovers_lines(k in -5.0f64..5.0, b in -3.0f64..3.0) {
        let xs: Vec<f64> = (0..7).map(|i| i as f64 * 0.7).collect();
        let ys: Vec<f64> = xs.iter().map(|x| k * x + b).collect();
        prop_assert!((fit_slope(&xs, &ys) - k).abs() < 1e-12);
    }

    #[test]
    fn ray_rate_formula(m in 0.1f64..10.0) {
        let ray = RayParams::new(m, 1.0).unwrap();
        prop_assert!((ray.rate() - (m * m + 1.0).sqrt() / (2.0 * m)).abs() < 1e-14);
        prop_assert!(ray.saddle_depth() < 0.5 && ray.saddle_depth() > 0.0);
    }
}
