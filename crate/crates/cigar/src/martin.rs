//! Martin kernels of Δ − 1 for every boundary point, atomic boundary
//! measures, and the growth diagnostic behind the uniqueness of positive
//! solutions vanishing on {y = 0}.
//!
//! * ω_ξ (real line): K = C(x, y, ξ)/C(x₀, y₀, ξ), C the η → 0 coefficient.
//! * θ = π/2: K ∝ W₀(y).
//! * θ ∈ [0, π]: K ∝ sinh^{3/2}y ₂F₁(¾ − sinθ/4, ¾ + sinθ/4; 2; −sinh²y) e^{x cosθ/2}.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

use crate::asymptotic::eta0_coefficient;
use crate::error::{Error, Result};
use crate::green::QuadratureConfig;
use crate::quad::pairwise_sum;
use crate::specfun::{c, check_height, hyp2f1, hyp2f1_deriv};
use crate::sturm::w0;
use crate::surface::{metric_factor, BoundaryPoint, SurfacePoint};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReferencePoint {
    pub point: SurfacePoint,
}

impl ReferencePoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        Ok(Self { point: SurfacePoint::new(x, y)? })
    }
}

impl Default for ReferencePoint {
    fn default() -> Self {
        Self { point: SurfacePoint { x: 0.0, y: 1.0 } }
    }
}

fn is_vertical(theta: f64) -> bool {
    theta == FRAC_PI_2
}

/// sinh^{3/2}y ₂F₁(¾ − sinθ/4, ¾ + sinθ/4; 2; −sinh²y).
pub fn circle_profile(theta: f64, y: f64) -> Result<f64> {
    check_height(y, "circle_profile")?;
    let (a, b) = circle_params(theta);
    let sh = y.sinh();
    Ok(sh.powf(1.5) * hyp2f1(c(a), c(b), c(2.0), -sh * sh)?.re)
}

/// d/dy of [`circle_profile`].
pub fn circle_profile_deriv(theta: f64, y: f64) -> Result<f64> {
    check_height(y, "circle_profile_deriv")?;
    let (a, b) = circle_params(theta);
    let (sh, ch) = (y.sinh(), y.cosh());
    let f = hyp2f1(c(a), c(b), c(2.0), -sh * sh)?.re;
    let df = hyp2f1_deriv(c(a), c(b), c(2.0), -sh * sh)?.re;
    Ok(1.5 * sh.sqrt() * ch * f - 2.0 * sh.powf(2.5) * ch * df)
}

fn circle_params(theta: f64) -> (f64, f64) {
    let s = theta.sin().max(0.0);
    (0.75 - 0.25 * s, 0.75 + 0.25 * s)
}

/// W₀′(y) = (cosh y + 2)(cosh y − 1)/(√2 sinh^{3/2}y).
pub fn w0_deriv(y: f64) -> f64 {
    let cm1 = 2.0 * (0.5 * y).sinh().powi(2);
    (y.cosh() + 2.0) * cm1 / (2f64.sqrt() * y.sinh().powf(1.5))
}

/// A kernel normalized to 1 at its reference point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MartinKernel {
    pub boundary: BoundaryPoint,
    pub reference: ReferencePoint,
    pub normalization: f64,
}

fn check_boundary(omega: BoundaryPoint) -> Result<()> {
    match omega {
        BoundaryPoint::RealLine { xi } if !xi.is_finite() => Err(Error::Domain(format!("ξ must be finite, got {xi}"))),
        BoundaryPoint::Circle { theta } => BoundaryPoint::circle(theta).map(|_| ()),
        _ => Ok(()),
    }
}

fn unnormalized(p: SurfacePoint, omega: BoundaryPoint, cfg: &QuadratureConfig) -> Result<f64> {
    match omega {
        BoundaryPoint::RealLine { xi } => eta0_coefficient(p.x, p.y, xi, cfg),
        BoundaryPoint::Circle { theta } if is_vertical(theta) => {
            check_height(p.y, "martin kernel")?;
            Ok(w0(p.y))
        }
        BoundaryPoint::Circle { theta } => Ok(circle_profile(theta, p.y)? * (0.5 * theta.cos() * p.x).exp()),
    }
}

impl MartinKernel {
    pub fn new(boundary: BoundaryPoint, reference: ReferencePoint, cfg: &QuadratureConfig) -> Result<Self> {
        check_boundary(boundary)?;
        let at_ref = unnormalized(reference.point, boundary, cfg)?;
        if !(at_ref > 0.0) {
            return Err(Error::NonFinite("Martin kernel at the reference point"));
        }
        Ok(Self { boundary, reference, normalization: 1.0 / at_ref })
    }

    pub fn eval(&self, p: SurfacePoint, cfg: &QuadratureConfig) -> Result<f64> {
        Ok(self.normalization * unnormalized(p, self.boundary, cfg)?)
    }

    /// ∂_y K − ½K. Only for circle points, where the kernel is in closed form.
    pub fn j_value(&self, p: SurfacePoint) -> Result<f64> {
        let BoundaryPoint::Circle { theta } = self.boundary else {
            return Err(Error::Unsupported("J is defined for circle boundary points".into()));
        };
        check_height(p.y, "j_value")?;
        let (k, dk) = if is_vertical(theta) {
            (w0(p.y), w0_deriv(p.y))
        } else {
            let e = (0.5 * theta.cos() * p.x).exp();
            (circle_profile(theta, p.y)? * e, circle_profile_deriv(theta, p.y)? * e)
        };
        Ok(self.normalization * (dk - 0.5 * k))
    }
}

/// K(p, ω) normalized at `reference`.
pub fn kernel_eval(p: SurfacePoint, omega: BoundaryPoint, reference: ReferencePoint, cfg: &QuadratureConfig) -> Result<f64> {
    MartinKernel::new(omega, reference, cfg)?.eval(p, cfg)
}

/// J(x, y, θ) = ∂_y K(x, y, θ) − ½K(x, y, θ).
pub fn j_function(x: f64, y: f64, theta: f64, reference: ReferencePoint) -> Result<f64> {
    let k = MartinKernel::new(BoundaryPoint::circle(theta)?, reference, &QuadratureConfig::default())?;
    k.j_value(SurfacePoint::new(x, y)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidualPoint {
    pub y: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OdeResidualReport {
    pub theta: f64,
    pub lambda: f64,
    pub points: Vec<ResidualPoint>,
    pub max_relative: f64,
    /// w(10⁻⁶)/w(1), which should vanish like y^{3/2}.
    pub boundary_value: f64,
}

/// Residual of −w″ + Pw − (cos²θ/4)w for w(y) = K(0, y, θ), with w″ from the
/// fourth-order five-point stencil, relative to max(|w″|, |Pw|, |λw|). The
/// three-point stencil's own truncation error is about 1.5·10⁻⁶ at y = 0.2.
pub fn kernel_ode_residual(theta: f64, ys: &[f64], h: f64) -> Result<OdeResidualReport> {
    let omega = BoundaryPoint::circle(theta)?;
    let cfg = QuadratureConfig::default();
    let k = MartinKernel::new(omega, ReferencePoint::default(), &cfg)?;
    let w = |y: f64| k.eval(SurfacePoint { x: 0.0, y }, &cfg);
    let lambda = 0.25 * theta.cos().powi(2);
    let points = ys
        .par_iter()
        .map(|&y| -> Result<ResidualPoint> {
            if y - 2.0 * h <= 0.0 {
                return Err(Error::Domain(format!("grid point {y} too close to the boundary for step {h}")));
            }
            let (wmm, wm, w0v, wp, wpp) = (w(y - 2.0 * h)?, w(y - h)?, w(y)?, w(y + h)?, w(y + 2.0 * h)?);
            let d2 = (-wpp + 16.0 * wp - 30.0 * w0v + 16.0 * wm - wmm) / (12.0 * h * h);
            let pw = metric_factor(y)? * w0v;
            let r = -d2 + pw - lambda * w0v;
            let scale = d2.abs().max(pw.abs()).max((lambda * w0v).abs());
            Ok(ResidualPoint { y, residual: r.abs() / scale })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_relative = points.iter().map(|p| p.residual).fold(0.0, f64::max);
    Ok(OdeResidualReport { theta, lambda, points, max_relative, boundary_value: w(1e-6)? / w(1.0)? })
}

/// Five-point residual of (∂ₓₓ + ∂ᵧᵧ − P)K relative to |PK|.
pub fn kernel_pde_residual(
    p: SurfacePoint,
    omega: BoundaryPoint,
    reference: ReferencePoint,
    h: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let k = MartinKernel::new(omega, reference, cfg)?;
    let at = |dx: f64, dy: f64| k.eval(SurfacePoint::new(p.x + dx, p.y + dy)?, cfg);
    let centre = at(0.0, 0.0)?;
    let lap = (at(h, 0.0)? + at(-h, 0.0)? + at(0.0, h)? + at(0.0, -h)? - 4.0 * centre) / (h * h);
    let pk = metric_factor(p.y)? * centre;
    Ok((lap - pk).abs() / pk.abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitRow {
    pub xi: f64,
    pub kernel: f64,
    /// The θ = 0 (ξ > 0) or θ = π (ξ < 0) kernel at the same point.
    pub limit: f64,
    pub ratio: f64,
}

/// K(p, ω_ξ) along a ξ sweep against its θ-limit.
pub fn kernel_realline_limits(
    p: SurfacePoint,
    xis: &[f64],
    reference: ReferencePoint,
    cfg: &QuadratureConfig,
) -> Result<Vec<LimitRow>> {
    xis.par_iter()
        .map(|&xi| {
            let kernel = kernel_eval(p, BoundaryPoint::RealLine { xi }, reference, cfg)?;
            let theta = if xi > 0.0 { 0.0 } else { std::f64::consts::PI };
            let limit = kernel_eval(p, BoundaryPoint::Circle { theta }, reference, cfg)?;
            Ok(LimitRow { xi, kernel, limit, ratio: kernel / limit })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub point: BoundaryPoint,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct DiscreteBoundaryMeasure {
    pub atoms: Vec<Atom>,
}

impl DiscreteBoundaryMeasure {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        for a in &atoms {
            if !(a.weight >= 0.0) || !a.weight.is_finite() {
                return Err(Error::Domain(format!("atom weight must be finite and non-negative, got {}", a.weight)));
            }
            check_boundary(a.point)?;
        }
        Ok(Self { atoms })
    }

    pub fn total_weight(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }
}

/// W(p) = Σ weight·K(p, ω).
pub fn represent(
    measure: &DiscreteBoundaryMeasure,
    p: SurfacePoint,
    reference: ReferencePoint,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let terms = measure
        .atoms
        .par_iter()
        .map(|a| Ok(a.weight * kernel_eval(p, a.point, reference, cfg)?))
        .collect::<Result<Vec<f64>>>()?;
    Ok(pairwise_sum(&terms))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniquenessReport {
    pub b: f64,
    pub x: f64,
    /// ∂_yW − ½W ≥ 0 at every sampled y ≥ b.
    pub holds: bool,
    /// First sampled y where ∂_yW − ½W < 0.
    pub first_violation: Option<f64>,
    /// (y, ∂_yW − ½W) samples.
    pub samples: Vec<(f64, f64)>,
}

/// Samples ∂_yW − ½W for W = Σ weight·K(·, θ) at abscissa x on
/// y ∈ [b, y_max] with spacing `step`.
pub fn uniqueness_diagnostic(
    measure: &DiscreteBoundaryMeasure,
    b: f64,
    x: f64,
    y_max: f64,
    step: f64,
    reference: ReferencePoint,
) -> Result<UniquenessReport> {
    check_height(b, "uniqueness_diagnostic")?;
    if !(y_max >= b) || !(step > 0.0) {
        return Err(Error::Domain(format!("need b ≤ y_max and step > 0, got [{b}, {y_max}] step {step}")));
    }
    let cfg = QuadratureConfig::default();
    let kernels = measure
        .atoms
        .iter()
        .map(|a| match a.point {
            BoundaryPoint::Circle { .. } => Ok((a.weight, MartinKernel::new(a.point, reference, &cfg)?)),
            BoundaryPoint::RealLine { .. } => {
                Err(Error::Unsupported("the growth diagnostic takes circle atoms only".into()))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let n = ((y_max - b) / step).floor() as usize;
    let samples = (0..=n)
        .into_par_iter()
        .map(|i| {
            let y = b + step * i as f64;
            let p = SurfacePoint::new(x, y)?;
            let terms = kernels.iter().map(|(w, k)| Ok(w * k.j_value(p)?)).collect::<Result<Vec<f64>>>()?;
            Ok((y, pairwise_sum(&terms)))
        })
        .collect::<Result<Vec<_>>>()?;
    let first_violation = samples.iter().find(|(_, j)| *j < 0.0).map(|(y, _)| *y);
    Ok(UniquenessReport { b, x, holds: first_violation.is_none(), first_violation, samples })
}

/// Sampled y ∈ [b, y_max] where W₀(y) < W₀(b) e^{(y−b)/2}.
pub fn w0_growth_violations(b: f64, y_max: f64, samples: usize) -> Result<Vec<f64>> {
    check_height(b, "w0_growth_violations")?;
    let base = w0(b);
    Ok((0..=samples)
        .map(|i| b + (y_max - b) * i as f64 / samples.max(1) as f64)
        .filter(|&y| w0(y) < base * (0.5 * (y - b)).exp())
        .collect())
}
