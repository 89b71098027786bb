use cigar::green::*;
use cigar::specfun::{f_hypergeo, spectral_ratio};
use num_complex::Complex64 as C64;
use proptest::prelude::*;

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

pub const HEIGHTS: [f64; 5] = [0.2, 0.5, 1.0, 2.0, 3.0];

#[test]
fn kernel_forms_agree_on_grid() {
    let mut worst = 0.0f64;
    for i in 0..=40 {
        let s = 0.5 * i as f64;
        for y in HEIGHTS {
            for eta in HEIGHTS {
                let k = KernelEval::new(s, y, eta).unwrap();
                worst = worst.max(k.relative_gap(y, eta).unwrap());
                assert_eq!(k.re_k, k.k_def.re);
            }
        }
    }
    assert!(worst < 1e-9, "{worst:e}");
}

#[test]
fn kernel_spot_value() {
    let k = KernelEval::new(1.3, 0.8, 2.1).unwrap();
    assert!((k.k_def - k.k_product).norm() < 1e-9 * k.k_def.norm());
}

#[test]
fn real_part_is_even_in_s() {
    let plus = kernel_k(2.0, 1.0, 1.0, KernelForm::Definition).unwrap().re;
    let minus = kernel_k(-2.0, 1.0, 1.0, KernelForm::Definition).unwrap().re;
    assert!((plus - minus).abs() < 1e-13 * plus.abs());
    assert_eq!(re_k_spectral_density(0.0, 1.0, 2.0).unwrap(), 0.0);
}

#[test]
fn small_eta_behaviour_of_the_kernel() {
    // Re k/η² → √π Re{R(s) e^{−isy} f(s,y)}
    let (s, y) = (1.7, 0.9);
    let limit = std::f64::consts::PI.sqrt()
        * (spectral_ratio(s) * C64::from_polar(1.0, -s * y) * f_hypergeo(s, y).unwrap()).re;
    let r = |eta: f64| kernel_k(s, y, eta, KernelForm::Definition).unwrap().re / (eta * eta);
    let (e3, e4) = ((r(1e-3) - limit).abs(), (r(1e-4) - limit).abs());
    assert!(e4 < 2e-3 * limit.abs() && e4 < e3, "{e3:e} {e4:e}");
}

#[test]
fn reference_values() {
    // mpmath, definition form of k, 30 digits
    let q = GreenQuery::new(0.0, 1.0, 1.0, 1.0).unwrap();
    let g = green_eval(&q, &cfg()).unwrap();
    assert!((g.value / 0.05782126476995099351931288 - 1.0).abs() < 1e-10);
    assert!(g.error_estimate < 1e-10 * g.value);
}

#[test]
fn symmetric_and_positive_on_grid() {
    let c = cfg();
    for xi in [-2.0, -0.5, 0.7, 1.5, 3.0] {
        for eta in [0.3, 0.8, 1.6, 2.5, 4.0] {
            let q = GreenQuery::new(0.0, 1.0, xi, eta).unwrap();
            let a = green_eval(&q, &c).unwrap().value;
            let b = green_eval(&q.swapped(), &c).unwrap().value;
            assert!(a > 0.0);
            assert!((a - b).abs() < 1e-6 * a, "({xi}, {eta}): {a} vs {b}");
        }
    }
}

/// Ten off-diagonal (source, target) pairs at distance ≥ 0.5.
pub fn pde_configs() -> Vec<GreenQuery> {
    [
        (0.0, 1.0, 1.5, 1.5),
        (0.0, 1.0, 1.0, 2.0),
        (0.0, 0.5, 2.0, 0.5),
        (0.0, 2.0, -1.0, 1.0),
        (0.3, 0.7, 0.3, 2.5),
        (0.0, 1.0, 0.0, 3.0),
        (1.0, 3.0, -1.0, 1.2),
        (0.0, 0.4, 0.8, 1.1),
        (0.0, 1.5, 3.0, 1.5),
        (-0.5, 2.0, 0.5, 4.0),
    ]
    .iter()
    .map(|&(x, y, xi, eta)| GreenQuery::new(x, y, xi, eta).unwrap())
    .collect()
}

#[test]
fn solves_the_equation_off_the_diagonal() {
    for q in pde_configs() {
        let r = green_pde_residual(&q, 1e-3, &cfg()).unwrap();
        assert!(r < 1e-3, "{q:?}: {r:e}");
        let back = green_pde_residual(&q.swapped(), 1e-3, &cfg()).unwrap();
        assert!(back < 1e-3, "{q:?} swapped: {back:e}");
    }
}

#[test]
fn routes_agree() {
    let q = GreenQuery::new(0.0, 1.0, 1.0, 2.0).unwrap();
    let mut values = Vec::new();
    for route in [Route::Auto, Route::RealAxis, Route::Rotated, Route::Saddle] {
        let c = QuadratureConfig { route, ..cfg() };
        values.push(green_eval(&q, &c).unwrap().value);
    }
    for v in &values {
        assert!((v / values[0] - 1.0).abs() < 1e-10, "{values:?}");
    }
}

#[test]
fn same_abscissa_is_supported() {
    let q = GreenQuery::new(0.0, 1.0, 0.0, 2.0).unwrap();
    let g = green_eval(&q, &cfg()).unwrap().value;
    let s = green_eval(&q.swapped(), &cfg()).unwrap().value;
    assert!(g > 0.0 && (g - s).abs() < 1e-9 * g);
}

#[test]
fn diagonal_is_rejected() {
    let q = GreenQuery::new(0.0, 1.0, 0.001, 1.0).unwrap();
    assert!(matches!(green_eval(&q, &cfg()), Err(cigar::Error::NearDiagonal { .. })));
    let bad = QuadratureConfig { rel_tol: 0.0, ..cfg() };
    assert!(green_eval(&GreenQuery::new(0.0, 1.0, 1.0, 1.0).unwrap(), &bad).is_err());
}

#[test]
fn integral_over_the_line_is_the_one_dimensional_green_function() {
    for (y, eta) in [(1.0, 2.0), (0.3, 0.9), (2.0, 0.5)] {
        let spectral = zero_mode_integral(y, eta, &cfg()).unwrap().value;
        let exact = zero_mode_green(y, eta).unwrap();
        assert!((spectral / exact - 1.0).abs() < 1e-10, "({y}, {eta}): {spectral} vs {exact}");
    }
}

#[test]
fn decays_along_the_vertical() {
    let c = cfg();
    let mut last = f64::INFINITY;
    for eta in [2.0, 4.0, 6.0, 8.0] {
        let g = green_eval(&GreenQuery::new(0.0, 1.0, 0.5, eta).unwrap(), &c).unwrap().value;
        assert!(g < last);
        // e^{−η/2}η^{−1/2} envelope
        let env = g * (0.5 * eta).exp() * eta.sqrt();
        assert!(env > 0.01 && env < 10.0, "{eta}: {env}");
        last = g;
    }
}

#[test]
fn tail_bound_properties() {
    let q = GreenQuery::new(0.0, 1.0, 1.0, 2.0).unwrap();
    assert!(integrand_tail_bound(30.0, &q) < 1e-12);
    assert_eq!(integrand_tail_bound(0.0, &q), f64::INFINITY);
    let mut prev = f64::INFINITY;
    for i in 1..60 {
        let s = 0.5 * i as f64;
        let b = integrand_tail_bound(s, &q);
        assert!(b <= prev);
        assert!(b >= green_integrand(2.0 * s, &q).unwrap().abs());
        prev = b;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn real_density_matches_definition(s in 0.0f64..20.0, y in 0.2f64..3.0, eta in 0.2f64..3.0) {
        let direct = kernel_k(s, y, eta, KernelForm::Definition).unwrap().re;
        let real = re_k_spectral_density(s, y, eta).unwrap();
        let scale = 2.0 * f_hypergeo(s, y).unwrap().norm() * f_hypergeo(s, eta).unwrap().norm();
        prop_assert!((direct - real).abs() < 1e-9 * scale);
    }

    #[test]
    fn tail_bound_dominates(s in 0.1f64..40.0, y in 0.2f64..3.0, eta in 0.2f64..3.0, dx in 0.2f64..3.0) {
        let q = GreenQuery::new(0.0, y, dx, eta).unwrap();
        prop_assert!(integrand_tail_bound(s, &q) >= green_integrand(s, &q).unwrap().abs());
    }
}
