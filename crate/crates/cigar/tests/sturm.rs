use cigar::specfun::{a_of_alpha, legendre_halforder, legendre_q_coth, w_solution, LegendreKind};
use cigar::sturm::*;
use num_complex::Complex64 as C64;
use proptest::prelude::*;

fn cx(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn residual_grid() -> Vec<f64> {
    (0..=48).map(|i| 0.2 + 0.1 * i as f64).collect()
}

#[test]
fn every_case_solves_the_equation() {
    for lambda in [0.0, 1.25, 4.25, -1.0, 0.2, -0.75, -3.75, -2.0, -6.0] {
        let pair = FundamentalPair::new(cx(lambda));
        for x in residual_grid() {
            for k in 0..2 {
                let r = ode_residual(
                    |t| {
                        let (a, b) = pair.eval(t)?;
                        Ok(if k == 0 { a } else { b })
                    },
                    cx(lambda),
                    x,
                    1e-4,
                )
                .unwrap();
                assert!(r < 1e-6, "λ = {lambda}, w{} at x = {x}: {r:e}", k + 1);
            }
        }
    }
}

#[test]
fn lambda_zero_pair_is_the_explicit_one() {
    let pair = FundamentalPair::new(cx(0.0));
    assert_eq!(pair.case, SolutionCase::LambdaZero);
    for x in [0.3, 1.0, 2.5] {
        let (w1, w2) = pair.eval(x).unwrap();
        let e = x.exp();
        let d = (0.5 * x).exp() / (e * e - 1.0).sqrt();
        assert!((w1.re - d).abs() < 1e-14 * d);
        let big = (e * e + 1.0) / ((0.5 * x).exp() * (e * e - 1.0).sqrt());
        assert!((w2.re - big).abs() < 1e-13 * big);
        // the generic formulas at α = ½ give the same pair
        let generic = FundamentalPair::from_param(SpectralParam { lambda: cx(0.0), alpha: cx(0.5 + 1e-9) });
        let (g1, g2) = generic.eval(x).unwrap();
        assert!((g1 - w1).norm() < 1e-7 * w1.norm() && (g2 - w2).norm() < 1e-7 * w2.norm());
        for k in 0..2 {
            let r = ode_residual(|t| Ok(if k == 0 { pair.eval(t)?.0 } else { pair.eval(t)?.1 }), cx(0.0), x, 1e-4)
                .unwrap();
            assert!(r < 1e-8 * 50.0, "{r:e}");
        }
    }
}

#[test]
fn continuous_spectrum_pair_is_w_and_its_conjugate() {
    let pair = FundamentalPair::new(cx(4.25));
    assert!((pair.param.alpha - C64::new(0.0, -2.0)).norm() < 1e-15);
    for x in [0.4, 1.0, 3.0] {
        let (w1, w2) = pair.eval(x).unwrap();
        let w = w_solution(2.0, x).unwrap();
        assert!((w2 - w).norm() < 1e-14 * w.norm());
        assert!((w1 - w.conj()).norm() < 1e-14 * w.norm());
    }
}

#[test]
fn integer_order_matches_legendre_route() {
    for m in [1u32, 2, 3] {
        let lambda = 0.25 - (m * m) as f64;
        let pair = FundamentalPair::new(cx(lambda));
        assert_eq!(pair.case, SolutionCase::IntegerM(m));
        for x in [0.3, 0.7, 1.5] {
            let (w1, w2) = pair.eval(x).unwrap();
            let z = 1.0 / x.tanh();
            let p = legendre_halforder(LegendreKind::P, m, z).unwrap();
            let q = legendre_halforder(LegendreKind::Q, m, z).unwrap();
            assert!((w1.re - p).abs() < 1e-12 * p.abs(), "m={m} x={x}: {} vs {p}", w1.re);
            assert!((w2.re - q).abs() < 1e-12 * q.abs());
        }
    }
}

#[test]
fn q_far_out_keeps_precision() {
    // mpmath legenq(½, m, coth x, type=3) at 60 digits
    let table = [
        (0u32, 5.0, 4.3864777696422632743),
        (0, 12.0, 11.386294361470590077),
        (1, 5.0, -74.178517455890764605),
        (1, 12.0, -81377.39565165591674),
        (2, 5.0, 11012.857782420692127),
        (2, 12.0, 13244561064.546736147),
    ];
    for (m, x, want) in table {
        let got = legendre_q_coth(m, x).unwrap();
        assert!((got / want - 1.0).abs() < 1e-13, "m={m} x={x}: {got} vs {want}");
    }
}

#[test]
fn wronskians_are_constant_and_match() {
    let lambda = cx(1.25);
    let alpha = C64::new(0.0, -1.0);
    let a = a_of_alpha(alpha).unwrap();
    for x in [0.3, 0.5, 1.0, 2.0, 3.0] {
        let w = wronskian(lambda, x).unwrap();
        assert!((w - 2.0 * alpha).norm() < 1e-8, "x={x}: {w}");
        let wab = wronskian_ab(lambda, x).unwrap();
        assert!((wab + 2.0 * alpha * a).norm() < 1e-8, "x={x}: {wab}");
    }
    for lambda in [-0.75, -3.75, 0.0, -1.0] {
        let pair = FundamentalPair::new(cx(lambda));
        let expected = pair.expected_wronskian().unwrap();
        for x in [0.3, 1.0, 3.0] {
            let w = wronskian(cx(lambda), x).unwrap();
            assert!((w - expected).norm() < 1e-8 * expected.norm().max(1.0), "λ={lambda} x={x}: {w}");
        }
    }
}

#[test]
fn wronskian_is_bilinear() {
    let pair = FundamentalPair::new(cx(1.25));
    let w = numeric_wronskian(|t| Ok(3.0 * pair.eval(t)?.0), |t| Ok(pair.eval(t)?.1), 1.0, 1e-3).unwrap();
    assert!((w - 3.0 * C64::new(0.0, -2.0)).norm() < 1e-8);
}

#[test]
fn wab_needs_generic_alpha() {
    assert!(wronskian_ab(cx(-0.75), 1.0).is_err());
}

#[test]
fn small_alpha_approaches_order_zero_legendre_pair() {
    let alpha = 1e-3;
    let pair = FundamentalPair::new(cx(0.25 - alpha * alpha));
    assert_eq!(pair.case, SolutionCase::GenericAlpha);
    let p = |x: f64| legendre_halforder(LegendreKind::P, 0, 1.0 / x.tanh()).unwrap();
    let q = |x: f64| legendre_q_coth(0, x).unwrap();
    for x in [0.5, 1.0, 2.0] {
        let (w1, w2) = pair.eval(x).unwrap();
        assert!((w1.re - p(x)).abs() < 10.0 * alpha * p(x).abs());
        assert!((w2.re - p(x)).abs() < 10.0 * alpha * p(x).abs());
    }
    // (w₂ − w₁)/(2α) lies in the span of P and Q up to O(α)
    let d = |x: f64| {
        let (w1, w2) = pair.eval(x).unwrap();
        (w2.re - w1.re) / (2.0 * alpha)
    };
    let (x1, x2) = (0.5, 2.0);
    let det = p(x1) * q(x2) - p(x2) * q(x1);
    let c1 = (d(x1) * q(x2) - d(x2) * q(x1)) / det;
    let c2 = (p(x1) * d(x2) - p(x2) * d(x1)) / det;
    for x in [0.8, 1.2, 3.0] {
        let fit = c1 * p(x) + c2 * q(x);
        assert!((fit - d(x)).abs() < 10.0 * alpha * d(x).abs().max(1.0), "x={x}: {fit} vs {}", d(x));
    }
}

#[test]
fn density_matrix_is_rank_one_and_psd() {
    for s in [0.05, 0.3, 1.3, 5.0, 20.0] {
        let m = SpectralDensityMatrix::new(s, REGULAR_POINT).unwrap();
        let (lo, hi) = m.eigenvalues();
        assert!(lo >= -1e-10 * hi.max(1.0), "s={s}: {lo}");
        assert!(hi > 0.0);
        let det = m.rho11 * m.rho22 - m.rho12 * m.rho12;
        assert!(det.abs() < 1e-10 * hi * hi);
    }
    assert!(SpectralDensityMatrix::new(0.0, 1.0).is_err());
}

#[test]
fn five_matrix_identity() {
    let (prod, expected) = five_matrix_product(1.3, 1.0).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            assert!((prod[i][j] - expected[i][j]).norm() < 1e-12 * 4.0 * 1.69);
        }
    }
}

#[test]
fn expansion_density_does_not_depend_on_regular_point() {
    for s in [0.4, 1.3, 7.0] {
        let direct = kernel_density(s, 0.8, 1.7).unwrap();
        for c in [1.0, 2.0, 0.5] {
            let m = SpectralDensityMatrix::new(s, c).unwrap();
            let v = m.expansion_density(c, 0.8, 1.7).unwrap();
            assert!((v - direct).abs() < 1e-12 * direct.abs().max(1.0), "s={s} c={c}: {v} vs {direct}");
        }
    }
}

#[test]
fn truncated_kernel_is_symmetric_and_localized() {
    let k12 = spectral_kernel(1.0, 2.0, 30.0).unwrap();
    let k21 = spectral_kernel(2.0, 1.0, 30.0).unwrap();
    assert!((k12 - k21).abs() <= 1e-9 * k12.abs());
    let peak = spectral_kernel(1.0, 1.0, 40.0).unwrap();
    let off = spectral_kernel(1.0, 2.5, 40.0).unwrap();
    assert!(peak > 10.0 && off.abs() < 0.01 * peak, "peak {peak}, off {off}");
    assert!(spectral_kernel(1.0, 1.0, 0.0).is_err());
}

fn bump(center: f64) -> impl Fn(f64) -> f64 {
    move |x| (-(x - center).powi(2) / (2.0 * 0.09)).exp()
}

fn grid() -> Vec<f64> {
    (1..=600).map(|i| i as f64 * 0.01).collect()
}

#[test]
fn reconstruction_improves_with_cutoff() {
    let h = SampledFunction::from_fn(grid(), bump(2.0)).unwrap();
    let errs: Vec<f64> = [10.0, 20.0, 40.0]
        .iter()
        .map(|&s| reconstruct(&h, s, SpectralGrid::default(), None).unwrap().relative_l2_error)
        .collect();
    assert!(errs[0] > errs[1] && errs[1] > errs[2], "{errs:?}");
    assert!(errs[2] < 1e-2);
    let err = reconstruct(&h, 5.0, SpectralGrid::default(), Some(1e-6)).unwrap_err();
    assert!(matches!(err, cigar::Error::Tolerance { .. }));
}

#[test]
fn reconstruction_is_linear_and_zero_preserving() {
    let g = SpectralGrid::default();
    let zero = SampledFunction::from_fn(grid(), |_| 0.0).unwrap();
    let r = reconstruct(&zero, 20.0, g, None).unwrap();
    assert!(r.values.iter().all(|v| *v == 0.0));
    let (f1, f2) = (bump(1.5), bump(4.0));
    let r1 = reconstruct(&SampledFunction::from_fn(grid(), &f1).unwrap(), 20.0, g, None).unwrap();
    let r2 = reconstruct(&SampledFunction::from_fn(grid(), &f2).unwrap(), 20.0, g, None).unwrap();
    let both = reconstruct(&SampledFunction::from_fn(grid(), |x| f1(x) + f2(x)).unwrap(), 20.0, g, None).unwrap();
    for i in 0..both.values.len() {
        assert!((both.values[i] - r1.values[i] - r2.values[i]).abs() < 1e-8);
    }
}

#[test]
fn sample_validation() {
    assert!(SampledFunction::new(vec![0.0, 1.0], vec![1.0, 1.0]).is_err());
    assert!(SampledFunction::new(vec![1.0, 0.5], vec![1.0, 1.0]).is_err());
    assert!(SampledFunction::new(vec![1.0], vec![1.0]).is_err());
}

#[test]
fn scan_cases_follow_the_growth_argument() {
    let osc = scan_point(1.0).unwrap();
    assert_eq!(osc.case, ScanCase::Oscillatory);
    assert!(osc.growth_rates.iter().all(|g| g.abs() < 1e-3));
    let generic = scan_point(-1.0).unwrap();
    assert_eq!(generic.case, ScanCase::Generic);
    let alpha = 1.25f64.sqrt();
    assert!((generic.growth_rates[1] - alpha).abs() < 1e-3);
    let integer = scan_point(-3.75).unwrap();
    assert_eq!(integer.case, ScanCase::IntegerM);
    // Q² vanishes like x^{3/2} at 0 but grows like e^{2x}
    assert!((integer.zero_exponents[1] - 1.5).abs() < 0.01);
    assert!((integer.regular_growth - 2.0).abs() < 1e-3);
    for row in [osc, generic, integer] {
        assert!(row.no_l2_eigenfunction && !row.inconclusive);
    }
    assert!(scan_point(0.2505).is_err());
    let near = scan_point(0.25 - (1.0 + 1e-8f64).powi(2)).unwrap();
    assert!(near.inconclusive && !near.no_l2_eigenfunction);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn wronskian_constant_for_random_lambda(lambda in -8.0f64..6.0, x in 0.3f64..3.0) {
        prop_assume!((lambda - 0.25).abs() > 1e-2);
        let pair = FundamentalPair::new(cx(lambda));
        let w = wronskian(cx(lambda), x).unwrap();
        let e = pair.expected_wronskian().unwrap();
        prop_assert!((w - e).norm() < 1e-8 * e.norm().max(1.0), "{} vs {}", w, e);
    }

    #[test]
    fn density_psd_for_random_s(s in 0.01f64..30.0, c in 0.2f64..3.0) {
        let m = SpectralDensityMatrix::new(s, c).unwrap();
        let (lo, hi) = m.eigenvalues();
        prop_assert!(lo >= -1e-10 * hi.max(1.0));
    }

    #[test]
    fn kernel_density_symmetric(s in 0.0f64..40.0, x in 0.1f64..5.0, y in 0.1f64..5.0) {
        let a = kernel_density(s, x, y).unwrap();
        let b = kernel_density(s, y, x).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
    }
}
