//! The surface ℝ × (0, ∞) with conformal metric P(y)(dx² + dy²).
//!
//! With u = sinh²y the metric data take the cancellation-free forms
//! P = ¼ + 3/(4u), K = −12(3 + 3u + 2u²)/(3 + u)³ and
//! k = P′/(2P) = −3 sinh 2y/(2u(u + 3)).

use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::ode::{self, OdeConfig};

/// A point (x, y) with y > 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfacePoint {
    pub x: f64,
    pub y: f64,
}

impl SurfacePoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !x.is_finite() || !(y > 0.0) || !y.is_finite() {
            return Err(Error::Domain(format!("surface point needs finite x and y > 0, got ({x}, {y})")));
        }
        Ok(Self { x, y })
    }
}

/// A point of the half-disk boundary: ω_ξ on the real line, or ω_θ on the
/// circle (θ = π/2 is the vertical end, θ ∈ {0, π} the corners).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum BoundaryPoint {
    RealLine { xi: f64 },
    Circle { theta: f64 },
}

impl BoundaryPoint {
    pub fn circle(theta: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::Domain(format!("circle angle must lie in [0, π], got {theta}")));
        }
        Ok(Self::Circle { theta })
    }

    pub fn vertical() -> Self {
        Self::Circle { theta: FRAC_PI_2 }
    }
}

fn check(y: f64) -> Result<()> {
    if y > 0.0 && y.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("height must be positive and finite, got {y}")))
    }
}

/// Above this height K and k take their leading exponential forms; the
/// neglected terms are O(e^{−2y}) relative, and u² would overflow near y = 177.
const ASYMPTOTE_HEIGHT: f64 = 40.0;

fn sinh2(y: f64) -> f64 {
    let s = y.sinh();
    s * s
}

/// P(y) = (e^{4y} + 10e^{2y} + 1)/(4(e^{2y} − 1)²).
pub fn metric_factor(y: f64) -> Result<f64> {
    check(y)?;
    Ok(0.25 + 0.75 / sinh2(y))
}

/// Gauss curvature K = −ΔlogP/(2P).
pub fn gauss_curvature(y: f64) -> Result<f64> {
    check(y)?;
    if y > ASYMPTOTE_HEIGHT {
        // u overflows; K ≈ −24/u ≈ −96 e^{−2y}
        return Ok(-96.0 * (-2.0 * y).exp());
    }
    let u = sinh2(y);
    let v = 3.0 + u;
    Ok(-12.0 * (3.0 + 3.0 * u + 2.0 * u * u) / (v * v * v))
}

/// k(y) = −12e^{2y}(e^{2y}+1)/(e^{6y}+9e^{4y}−9e^{2y}−1), the single
/// Christoffel factor of the conformal metric.
pub fn christoffel_factor(y: f64) -> Result<f64> {
    check(y)?;
    if y > ASYMPTOTE_HEIGHT {
        return Ok(-12.0 * (-2.0 * y).exp());
    }
    let u = sinh2(y);
    Ok(-3.0 * (2.0 * y).sinh() / (2.0 * u * (u + 3.0)))
}

/// Geodesic families through the y-axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeodesicKind {
    /// x constant.
    Vertical,
    /// Horizontal tangent at height a; y ∈ (0, a].
    HorizontalTangent,
    /// Slope m = √3/sinh a at height a; escapes to a corner.
    Critical,
    /// Slope m > √3/sinh a at height a; escapes to the circle.
    Steep,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeodesicSpec {
    pub kind: GeodesicKind,
    pub a: f64,
    pub m: f64,
    pub x_shift: f64,
    pub reflected: bool,
}

/// Slope √3/sinh a separating the downward and upward families at height a.
pub fn critical_slope(a: f64) -> f64 {
    3f64.sqrt() / a.sinh()
}

impl GeodesicSpec {
    pub fn new(kind: GeodesicKind, a: f64, m: f64) -> Result<Self> {
        check(a)?;
        let crit = critical_slope(a);
        let m = match kind {
            GeodesicKind::Vertical => f64::INFINITY,
            GeodesicKind::HorizontalTangent => 0.0,
            GeodesicKind::Critical => crit,
            GeodesicKind::Steep => {
                if !(m > crit) || !m.is_finite() {
                    return Err(Error::Domain(format!("steep geodesic needs finite m > {crit}, got {m}")));
                }
                m
            }
        };
        Ok(Self { kind, a, m, x_shift: 0.0, reflected: false })
    }

    pub fn shifted(mut self, dx: f64) -> Self {
        self.x_shift += dx;
        self
    }

    pub fn reflect(mut self) -> Self {
        self.reflected = !self.reflected;
        self
    }
}

/// C(a) = √(2cosh 2a + 10)/(4√3), the amplitude of the horizontal-tangent
/// family.
fn htangent_amplitude(a: f64) -> f64 {
    (2.0 * (2.0 * a).cosh() + 10.0).sqrt() / (4.0 * 3f64.sqrt())
}

/// Θ_a(y) = atan2(√2 cosh y √(cosh 2a − cosh 2y), cosh 2y − sinh²a); the
/// horizontal-tangent branch with ẋ > 0 is x = C(a)(Θ_a(y_0) − Θ_a(y)) and
/// the half-width to the real line is C(a)Θ_a(0).
fn htangent_angle(a: f64, y: f64) -> f64 {
    let gap = ((2.0 * a).cosh() - (2.0 * y).cosh()).max(0.0);
    (2f64.sqrt() * y.cosh() * gap.sqrt()).atan2((2.0 * y).cosh() - sinh2(a))
}

/// F(y) for the steep family: √(3+sinh²a)/√D · log(D cosh y + √D √(D cosh²y + E))
/// with D = m² sinh²a − 3, E = 3cosh²a + 2m² sinh²a.
fn steep_primitive(a: f64, m: f64, y: f64) -> f64 {
    let d = m * m * sinh2(a) - 3.0;
    let e = 3.0 * a.cosh().powi(2) + 2.0 * m * m * sinh2(a);
    let ch = y.cosh();
    let rd = d.sqrt();
    (3.0 + sinh2(a)).sqrt() / rd * (d * ch + rd * (d * ch * ch + e).sqrt()).ln()
}

/// x(y) along the geodesic; for the horizontal-tangent kind this is the
/// branch leaving (x_shift, a) with ẋ > 0 (ẋ < 0 when reflected) and the
/// other branches follow by reflection.
pub fn geodesic_closed_form(spec: &GeodesicSpec, y: f64) -> Result<f64> {
    check(y)?;
    let a = spec.a;
    let raw = match spec.kind {
        GeodesicKind::Vertical => {
            return Err(Error::Unsupported("vertical geodesics have constant x".into()))
        }
        GeodesicKind::HorizontalTangent => {
            if y > a * (1.0 + 1e-14) {
                return Err(Error::Domain(format!("horizontal-tangent geodesic lives in (0, {a}], got y = {y}")));
            }
            htangent_amplitude(a) * htangent_angle(a, y.min(a))
        }
        GeodesicKind::Critical => (y.cosh() - a.cosh()) / 3f64.sqrt(),
        GeodesicKind::Steep => steep_primitive(a, spec.m, y) - steep_primitive(a, spec.m, a),
    };
    let sign = if spec.reflected { -1.0 } else { 1.0 };
    Ok(spec.x_shift + sign * raw)
}

/// Metric-unit tangent (ẋ, ẏ) at height y with Euclidean slope dy/dx = m
/// and the given sign of ẋ; m = ∞ means straight up, m = −∞ straight down.
pub fn unit_tangent(y: f64, m: f64, sign_x: f64) -> Result<(f64, f64)> {
    let speed = 1.0 / metric_factor(y)?.sqrt();
    if m.is_infinite() {
        return Ok((0.0, speed * m.signum()));
    }
    let n = (1.0 + m * m).sqrt();
    let sx = if sign_x < 0.0 { -1.0 } else { 1.0 };
    Ok((sx * speed / n, sx * speed * m / n))
}

/// One sample of an integrated geodesic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathSample {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub xdot: f64,
    pub ydot: f64,
    pub speed_drift: f64,
}

/// Integrates ẍ = −2kẋẏ, ÿ = −k(ẏ² − ẋ²) from a metric-unit tangent.
pub fn geodesic_integrate(
    start: SurfacePoint,
    direction: (f64, f64),
    t_max: f64,
    cfg: &OdeConfig,
) -> Result<Vec<PathSample>> {
    let p0 = metric_factor(start.y)?;
    let norm = p0 * (direction.0.powi(2) + direction.1.powi(2));
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::Domain(format!("initial tangent has metric norm² {norm}, expected 1")));
    }
    let rhs = |_t: f64, u: &[f64; 4]| -> Result<[f64; 4]> {
        if !(u[1] > 0.0) {
            return Err(Error::Domain("geodesic reached y ≤ 0".into()));
        }
        let k = christoffel_factor(u[1])?;
        Ok([u[2], u[3], -2.0 * k * u[2] * u[3], -k * (u[3] * u[3] - u[2] * u[2])])
    };
    let states = ode::integrate(rhs, [start.x, start.y, direction.0, direction.1], 0.0, t_max, cfg, |u| u[1] > 0.0)?;
    states
        .into_iter()
        .map(|(t, u)| {
            let drift = metric_factor(u[1])? * (u[2] * u[2] + u[3] * u[3]) - 1.0;
            Ok(PathSample { t, x: u[0], y: u[1], xdot: u[2], ydot: u[3], speed_drift: drift })
        })
        .collect()
}

/// Boundary point reached by the geodesic leaving (0, a) in horizontal
/// direction sign_x and rising m per unit of horizontal travel (±∞ for
/// vertical), i.e. Euclidean slope dy/dx = sign_x·m.
///
/// Upward escapes land on the circle with tan θ = √(m² sinh²a − 3)/√(3 + sinh²a)
/// (θ measured from the side of travel). Everything else hits the real line
/// at a closed-form ξ.
pub fn classify_direction(a: f64, m: f64, sign_x: f64) -> Result<BoundaryPoint> {
    check(a)?;
    if m.is_nan() {
        return Err(Error::Domain("slope is NaN".into()));
    }
    let sx = if sign_x < 0.0 { -1.0 } else { 1.0 };
    if m == f64::INFINITY {
        return Ok(BoundaryPoint::vertical());
    }
    if m == f64::NEG_INFINITY {
        return Ok(BoundaryPoint::RealLine { xi: 0.0 });
    }
    let crit = critical_slope(a);
    let sa2 = sinh2(a);
    let on_side = |theta: f64| if sx > 0.0 { theta } else { PI - theta };
    if m >= crit {
        let t = ((m * m * sa2 - 3.0).max(0.0)).sqrt() / (3.0 + sa2).sqrt();
        return Ok(BoundaryPoint::Circle { theta: on_side(t.atan()) });
    }
    let rel = if m.abs() < crit {
        // turns over at height b ≥ a, then descends
        let e = 3.0 * a.cosh().powi(2) + 2.0 * m * m * sa2;
        let b = (e / (3.0 - m * m * sa2)).sqrt().acosh();
        let sgn = if m > 0.0 { 1.0 } else if m < 0.0 { -1.0 } else { 0.0 };
        htangent_amplitude(b) * (htangent_angle(b, 0.0) + sgn * htangent_angle(b, a))
    } else if m == -crit {
        (a.cosh() - 1.0) / 3f64.sqrt()
    } else {
        let mm = m.abs();
        steep_primitive(a, mm, a) - steep_primitive(a, mm, 0.0)
    };
    Ok(BoundaryPoint::RealLine { xi: sx * rel })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metric_at_log2() {
        let p = metric_factor(2f64.ln()).unwrap();
        assert!((p - 57.0 / 36.0).abs() < 1e-14);
    }

    #[test]
    fn christoffel_is_log_derivative() {
        let h = 1e-5;
        let dp = (metric_factor(1.0 + h).unwrap() - metric_factor(1.0 - h).unwrap()) / (2.0 * h);
        let k = christoffel_factor(1.0).unwrap();
        assert!((k - dp / (2.0 * metric_factor(1.0).unwrap())).abs() < 1e-9);
    }

    #[test]
    fn rejects_nonpositive_heights() {
        assert!(metric_factor(0.0).is_err());
        assert!(gauss_curvature(-1.0).is_err());
        assert!(SurfacePoint::new(0.0, f64::NAN).is_err());
    }
}
