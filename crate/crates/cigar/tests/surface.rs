use cigar::ode::OdeConfig;
use cigar::surface::*;
use proptest::prelude::*;
use std::f64::consts::{FRAC_PI_2, PI};

fn tight() -> OdeConfig {
    OdeConfig { rtol: 1e-12, atol: 1e-14, h_max: 0.05, ..OdeConfig::default() }
}

/// The twelve geodesic parameter sets: three per kind.
pub fn geodesic_sets() -> Vec<GeodesicSpec> {
    let mut out = Vec::new();
    for a in [0.5, 1.0, 2.0] {
        out.push(GeodesicSpec::new(GeodesicKind::Vertical, a, 0.0).unwrap());
        out.push(GeodesicSpec::new(GeodesicKind::HorizontalTangent, a, 0.0).unwrap());
        out.push(GeodesicSpec::new(GeodesicKind::Critical, a, 0.0).unwrap());
    }
    for (a, factor) in [(0.5, 1.5), (1.0, 2.0), (2.0, 4.0)] {
        out.push(GeodesicSpec::new(GeodesicKind::Steep, a, factor * critical_slope(a)).unwrap());
    }
    out
}

fn sup_deviation(spec: &GeodesicSpec) -> f64 {
    let start = SurfacePoint::new(spec.x_shift, spec.a).unwrap();
    let sign = if spec.reflected { -1.0 } else { 1.0 };
    let dir = unit_tangent(spec.a, sign * spec.m, sign).unwrap();
    let path = geodesic_integrate(start, dir, 20.0, &tight()).unwrap();
    assert!(path.last().unwrap().t >= 20.0 - 1e-9);
    path.iter()
        .map(|p| match spec.kind {
            GeodesicKind::Vertical => (p.x - spec.x_shift).abs(),
            _ => (p.x - geodesic_closed_form(spec, p.y).unwrap()).abs(),
        })
        .fold(0.0, f64::max)
}

#[test]
fn integrator_matches_closed_forms() {
    let sets = geodesic_sets();
    assert_eq!(sets.len(), 12);
    for spec in &sets {
        let dev = sup_deviation(spec);
        assert!(dev < 1e-6, "{spec:?}: {dev:e}");
    }
}

#[test]
fn shifted_and_reflected_geodesics() {
    let spec = GeodesicSpec::new(GeodesicKind::HorizontalTangent, 1.0, 0.0).unwrap();
    assert!(sup_deviation(&spec.shifted(2.5)) < 1e-6);
    assert!(sup_deviation(&spec.reflect()) < 1e-6);
    let steep = GeodesicSpec::new(GeodesicKind::Steep, 1.0, 3.0).unwrap();
    assert!(sup_deviation(&steep.reflect().shifted(-1.0)) < 1e-6);
}

#[test]
fn curvature_minimum_and_limits() {
    let y_min = (2.0 + 3f64.sqrt()).ln();
    assert!((gauss_curvature(y_min).unwrap() + 5.0 / 3.0).abs() < 1e-10);
    for y in [0.5, 1.0, 1.3, 1.33, 2.0, 5.0] {
        assert!(gauss_curvature(y).unwrap() >= -5.0 / 3.0 - 1e-14);
    }
    assert!((gauss_curvature(1e-6).unwrap() + 4.0 / 3.0).abs() < 1e-4);
    // K ≈ −96e^{−2y} far out, on both sides of the overflow switch
    for y in [30.0, 39.9, 40.1, 300.0] {
        let k = gauss_curvature(y).unwrap();
        assert!((k / (-96.0 * (-2.0 * y).exp()) - 1.0).abs() < 1e-10, "y={y}: {k}");
        let c = christoffel_factor(y).unwrap();
        assert!((c / (-12.0 * (-2.0 * y).exp()) - 1.0).abs() < 1e-10, "y={y}: {c}");
    }
}

#[test]
fn metric_matches_exponential_form() {
    for y in [0.01f64, 0.3, 1.0, 4.0] {
        let e = (2.0 * y).exp();
        let direct = (e * e + 10.0 * e + 1.0) / (4.0 * (e - 1.0).powi(2));
        assert!((metric_factor(y).unwrap() / direct - 1.0).abs() < 1e-12);
    }
}

#[test]
fn steep_geodesics_reach_the_circle_at_the_predicted_angle() {
    let a = 1.0;
    let m = 3.0 * critical_slope(a);
    let BoundaryPoint::Circle { theta } = classify_direction(a, m, 1.0).unwrap() else {
        panic!("expected a circle point");
    };
    // on the circle end dx/dy → cot θ along the escaping branch
    let start = SurfacePoint::new(0.0, a).unwrap();
    let path = geodesic_integrate(start, unit_tangent(a, m, 1.0).unwrap(), 40.0, &tight()).unwrap();
    let (p, q) = (path[path.len() - 2], path[path.len() - 1]);
    let slope = (q.x - p.x) / (q.y - p.y);
    assert!((slope - 1.0 / theta.tan()).abs() < 1e-3, "{slope} vs {}", 1.0 / theta.tan());
}

#[test]
fn classification_covers_all_directions() {
    assert_eq!(classify_direction(1.0, f64::INFINITY, 1.0).unwrap(), BoundaryPoint::Circle { theta: FRAC_PI_2 });
    assert_eq!(classify_direction(1.0, f64::NEG_INFINITY, 1.0).unwrap(), BoundaryPoint::RealLine { xi: 0.0 });
    let crit = critical_slope(1.0);
    match classify_direction(1.0, crit, 1.0).unwrap() {
        BoundaryPoint::Circle { theta } => assert!(theta.abs() < 1e-12),
        other => panic!("{other:?}"),
    }
    match classify_direction(1.0, crit, -1.0).unwrap() {
        BoundaryPoint::Circle { theta } => assert!((theta - PI).abs() < 1e-12),
        other => panic!("{other:?}"),
    }
    match classify_direction(1.0, 0.0, 1.0).unwrap() {
        BoundaryPoint::RealLine { xi } => {
            let spec = GeodesicSpec::new(GeodesicKind::HorizontalTangent, 1.0, 0.0).unwrap();
            assert!((xi - geodesic_closed_form(&spec, 1e-12).unwrap()).abs() < 1e-9);
        }
        other => panic!("{other:?}"),
    }
    assert!(classify_direction(1.0, f64::NAN, 1.0).is_err());
}

#[test]
fn integrator_rejects_non_unit_tangent() {
    let start = SurfacePoint::new(0.0, 1.0).unwrap();
    assert!(geodesic_integrate(start, (1.0, 0.0), 1.0, &OdeConfig::default()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn curvature_bounded_by_minimum(y in 1e-4f64..50.0) {
        let k = gauss_curvature(y).unwrap();
        prop_assert!((-5.0 / 3.0 - 1e-12..0.0).contains(&k));
    }

    #[test]
    fn speed_is_conserved(a in 0.2f64..3.0, m in -5.0f64..5.0) {
        let start = SurfacePoint::new(0.0, a).unwrap();
        let path = geodesic_integrate(start, unit_tangent(a, m, 1.0).unwrap(), 5.0, &tight()).unwrap();
        for p in path {
            prop_assert!(p.speed_drift.abs() < 1e-8);
        }
    }

    #[test]
    fn reflection_mirrors_classification(a in 0.2f64..3.0, m in -5.0f64..5.0) {
        let right = classify_direction(a, m, 1.0).unwrap();
        let left = classify_direction(a, m, -1.0).unwrap();
        match (right, left) {
            (BoundaryPoint::RealLine { xi: r }, BoundaryPoint::RealLine { xi: l }) => prop_assert!((r + l).abs() < 1e-12),
            (BoundaryPoint::Circle { theta: r }, BoundaryPoint::Circle { theta: l }) => prop_assert!((r + l - PI).abs() < 1e-12),
            _ => prop_assert!(false, "mixed classification"),
        }
    }
}
