//! Boundary-regime asymptotics of G and the numeric comparison harnesses.
//!
//! Normalizations follow the G of [`crate::green`]; see the decisions ledger
//! for the two places where the leading constants differ from the printed
//! ones (η → ∞ coefficient, ray power and constant).

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::green::{
    self, a_of_sigma, contour_integral, f_complex, f_modulus_bound, green_eval, real_axis_integral,
    spectral_integral, spectral_weight, Contour, GreenQuery, QuadratureConfig, RayPiece, RAY_ANGLE,
};
use crate::specfun::{c, check_height, hyp2f1, ln_gamma, spectral_ratio_norm_sqr, I};
use crate::sturm::w0;

/// One grid point of a numeric-vs-asymptotic sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticReport {
    pub parameter: f64,
    pub numeric: f64,
    pub predicted: f64,
    pub ratio: f64,
    pub fitted_rate: f64,
}

/// The ray η = m|ξ| on the side sign(ξ) = `sign_xi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RayParams {
    pub m: f64,
    pub sign_xi: f64,
}

impl RayParams {
    pub fn new(m: f64, sign_xi: f64) -> Result<Self> {
        if !(m > 0.0) || !m.is_finite() {
            return Err(Error::Domain(format!("ray slope must be positive, got {m}")));
        }
        if sign_xi != 1.0 && sign_xi != -1.0 {
            return Err(Error::Domain(format!("ray side must be ±1, got {sign_xi}")));
        }
        Ok(Self { m, sign_xi })
    }

    fn q(&self) -> f64 {
        self.m.hypot(1.0)
    }

    /// Saddle depth v₀ = m/(2√(m²+1)), z₀ = −iv₀.
    pub fn saddle_depth(&self) -> f64 {
        self.m / (2.0 * self.q())
    }

    /// Exponential decay rate of G per unit η, √(m²+1)/(2m).
    pub fn rate(&self) -> f64 {
        self.q() / (2.0 * self.m)
    }
}

fn sqrt_e2(y: f64) -> f64 {
    (-(-2.0 * y).exp_m1()).sqrt()
}

/// C(x, y, ξ) with G ≈ C η^{3/2} as η → 0:
/// C = (2√(2π)√(1 − e^{−2y}))^{−1} ∫₀^∞ |R(s)| g(s, y) e^{−|x−ξ|√(s²+¼)}/√(s²+¼) ds.
pub fn eta0_coefficient(x: f64, y: f64, xi: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_height(y, "eta0_coefficient")?;
    let a = (x - xi).abs();
    if a == 0.0 {
        return Err(Error::Divergent("η → 0 coefficient integral diverges at x = ξ".into()));
    }
    let scale = 1.0 / (2.0 * (2.0 * PI).sqrt() * sqrt_e2(y));
    let density = |s: f64| -> Result<f64> {
        Ok(scale * spectral_ratio_norm_sqr(s).sqrt() * green::spectral_profile(s, y)?)
    };
    // |R| ≤ (s²+¼)^{3/4} and |g| ≤ sup|f|, so the tail is at most
    // ∫_s^∞ √(t+½) e^{−At} dt ≤ e^{−As}(√(s+½)/A + 1/(2A²√(s+½))).
    let bound = scale * f_modulus_bound(y);
    let tail = move |s: f64| {
        let r = (s + 0.5).sqrt();
        bound * (-a * s).exp() * (r / a + 1.0 / (2.0 * a * a * r))
    };
    real_axis_integral(density, a, tail, y, cfg)?
        .map(|v| v.value)
        .ok_or(Error::Tolerance { requested: cfg.rel_tol, achieved: f64::INFINITY })
}

/// C(x, y, ξ) η^{3/2}.
pub fn predict_eta0(x: f64, y: f64, xi: f64, eta: f64) -> Result<f64> {
    check_height(eta, "predict_eta0")?;
    Ok(eta0_coefficient(x, y, xi, &QuadratureConfig::default())? * eta.powf(1.5))
}

/// (2√π)^{−1} W₀(y) e^{η/2}/(η^{1/2}(e^{2η} − 1)^{1/2}); independent of x, ξ.
pub fn predict_eta_inf(_x: f64, y: f64, _xi: f64, eta: f64) -> Result<f64> {
    check_height(eta, "predict_eta_inf")?;
    Ok(w0(y) * (-0.5 * eta).exp() / (2.0 * PI.sqrt() * eta.sqrt() * sqrt_e2(eta)))
}

/// The Watson limit of I(η) e^{η/2} η^{1/2}: 2√π e^{−3y/2}(e^y − 1)².
pub fn watson_limit(y: f64) -> f64 {
    2.0 * PI.sqrt() * (-1.5 * y).exp() * y.exp_m1().powi(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IForm {
    /// ∫_ℝ (a(s)e^{−isy}f(s,y) + e^{isy}f̄(s,y)) e^{−isη} e^{−A√(s²+¼)}/√(s²+¼) ds.
    Spectral,
    /// The branch-cut form, a real Laplace integral in t = u².
    Laplace,
}

/// I(η) for separation A ≥ 0, in either form.
pub fn i_eta(eta: f64, a: f64, y: f64, form: IForm, cfg: &QuadratureConfig) -> Result<f64> {
    check_height(y, "i_eta")?;
    check_height(eta, "i_eta")?;
    if !(a >= 0.0) {
        return Err(Error::Domain(format!("separation must be non-negative, got {a}")));
    }
    if eta <= y {
        return Err(Error::Domain(format!("I(η) needs η > y, got η = {eta}, y = {y}")));
    }
    match form {
        IForm::Spectral => i_eta_spectral(eta, a, y, cfg),
        IForm::Laplace => i_eta_laplace(eta, a, y, cfg),
    }
}

fn i_eta_spectral(eta: f64, a: f64, y: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let pieces = [
        RayPiece {
            freq: y + eta,
            f: Box::new(move |z: C64| Ok(2.0 * a_of_sigma(z)? * (-I * z * (y + eta)).exp() * f_complex(z, y)?)),
        },
        RayPiece {
            freq: eta - y,
            f: Box::new(move |z: C64| Ok(2.0 * (-I * z * (eta - y)).exp() * f_complex(-z, y)?)),
        },
    ];
    let density = |s: f64| -> Result<f64> {
        let z = C64::new(s, 0.0);
        Ok(pieces.iter().map(|p| (p.f)(z)).sum::<Result<C64>>()?.re)
    };
    let bound = 4.0 * f_modulus_bound(y);
    if a > 0.0 {
        return Ok(spectral_integral(density, &pieces, a, bound, y + eta, cfg)?.value);
    }
    let w = spectral_weight(0.0);
    Ok(contour_integral(&pieces, &w, 0.0, Contour::Ray { angle: RAY_ANGLE }, cfg.rel_tol, cfg.abs_tol, cfg.max_nodes)?
        .value)
}

/// 2√π e^{−(η+y)/2} sinh²y ∫₀^∞ Γ(2+t)/Γ(½+t) ₂F₁(½−t/2, 1+t/2; 2; −sinh²y)
/// cos(A√(t(t+1)))/√(t(t+1)) e^{−ηt} dt, integrated in u = √t.
fn i_eta_laplace(eta: f64, a: f64, y: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let sh2 = y.sinh().powi(2);
    let integrand = |u: f64| -> Result<f64> {
        let t = u * u;
        let r = u.hypot(1.0);
        let gamma = (ln_gamma(c(2.0 + t))? - ln_gamma(c(0.5 + t))?).re.exp();
        let hyp = hyp2f1(c(0.5 - 0.5 * t), c(1.0 + 0.5 * t), c(2.0), -sh2)?.re;
        Ok(2.0 * gamma * hyp * (a * u * r).cos() / r * (-eta * t).exp())
    };
    // the density grows no faster than e^{yt}·t^{3/2}
    let t_max = 60.0 / (eta - y) + 4.0;
    let width = (1.0 / (a + 1.0)).min(0.5);
    let body = green::panel_integral(integrand, 0.0, t_max.sqrt(), width, cfg.rel_tol, cfg.abs_tol, cfg.max_nodes)?;
    Ok(2.0 * PI.sqrt() * (-0.5 * (eta + y)).exp() * sh2 * body.value)
}

fn ray_profile(rp: &RayParams, y: f64) -> Result<f64> {
    let v = rp.saddle_depth();
    let sh = y.sinh();
    Ok(hyp2f1(c(0.75 - 0.5 * v), c(0.75 + 0.5 * v), c(2.0), -sh * sh)?.re)
}

fn gamma_shift(v: f64) -> Result<f64> {
    Ok((ln_gamma(c(1.5 + v))? - ln_gamma(c(1.0 + v))?).re.exp())
}

/// Leading behaviour of G along η = m|ξ| for the source (x, y):
/// m^{3/2}Γ(3/2+v₀) sinh^{3/2}y Φ_m(y) e^{sign(ξ)x/(2√(m²+1))}
/// / (4√2 (m²+1)^{3/4} Γ(1+v₀)) · η^{−1/2} e^{−√(m²+1)η/(2m)}, with
/// v₀ = m/(2√(m²+1)) and Φ_m(y) = ₂F₁(¾ − v₀/2, ¾ + v₀/2; 2; −sinh²y).
pub fn predict_ray(rp: RayParams, x: f64, y: f64, xi: f64) -> Result<f64> {
    check_height(y, "predict_ray")?;
    if xi == 0.0 || xi.signum() != rp.sign_xi {
        return Err(Error::Domain(format!("ξ = {xi} is not on the side {} of the ray", rp.sign_xi)));
    }
    let (m, q) = (rp.m, rp.q());
    let eta = m * xi.abs();
    let coef = m.powf(1.5) * gamma_shift(rp.saddle_depth())? * y.sinh().powf(1.5) * ray_profile(&rp, y)?
        * (rp.sign_xi * x / (2.0 * q)).exp()
        / (4.0 * 2f64.sqrt() * q.powf(1.5));
    Ok(coef * (-rp.rate() * eta).exp() / eta.sqrt())
}

/// Ingredients of the steepest-descent leading term at z₀ = −iv₀, each from
/// its closed form and from local evaluation (g from the connection-formula
/// pieces, derivatives of φ(z) = −(imz + √(z²+¼)) by central differences).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SaddleCheck {
    pub b0_closed: f64,
    pub b0_local: C64,
    pub phi1_fd: C64,
    pub phi2_closed: f64,
    pub phi2_fd: C64,
    /// Coefficient of ξ^{−1/2}e^{ξφ(z₀)} in Re ∫₀^∞ g e^{ξφ}: ½ b₀ √(2π/|φ″|).
    pub leading_closed: f64,
    pub leading_local: f64,
}

pub fn saddle_check(rp: RayParams, x: f64, y: f64) -> Result<SaddleCheck> {
    check_height(y, "saddle_check")?;
    let (m, q, v) = (rp.m, rp.q(), rp.saddle_depth());
    let sh = y.sinh();
    let b0_closed = m * PI.sqrt() * gamma_shift(v)? * (x / (2.0 * q)).exp() * (-0.5 * y).exp() * sh * sh
        * ray_profile(&rp, y)?;
    let z0 = C64::new(0.0, -v);
    let g = |z: C64| -> Result<C64> {
        let rr = a_of_sigma(z)? * (-I * z * y).exp() * f_complex(z, y)? + (I * z * y).exp() * f_complex(-z, y)?;
        let root = (z * z + 0.25).sqrt();
        Ok(rr * (x * root).exp() / root)
    };
    let phi = |z: C64| -(I * m * z + (z * z + 0.25).sqrt());
    let h = 1e-4;
    let phi1_fd = (phi(z0 + h) - phi(z0 - h)) / (2.0 * h);
    let phi2_fd = (phi(z0 + h) - 2.0 * phi(z0) + phi(z0 - h)) / (h * h);
    let b0_local = g(z0)?;
    let phi2_closed = -2.0 * q.powi(3);
    Ok(SaddleCheck {
        b0_closed,
        b0_local,
        phi1_fd,
        phi2_closed,
        phi2_fd,
        leading_closed: PI.sqrt() * b0_closed / (2.0 * q.powf(1.5)),
        leading_local: 0.5 * b0_local.re * (2.0 * PI / phi2_fd.norm()).sqrt(),
    })
}

/// A sweep: which regime, with the parameters held fixed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "regime", rename_all = "snake_case")]
pub enum Regime {
    /// Grid over η → 0.
    Eta0 { x: f64, y: f64, xi: f64 },
    /// Grid over η → ∞.
    EtaInf { x: f64, y: f64, xi: f64 },
    /// Grid over |ξ| along the ray; reported parameter is ξ.
    Ray { x: f64, y: f64, ray: RayParams },
}

/// Least-squares slope of ys against xs; NaN for fewer than two points.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return f64::NAN;
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// Numeric G against the regime's predictor on every grid point.
/// `fitted_rate` is the same for all rows:
/// * η → 0: slope of log G against log η;
/// * η → ∞: slope of log|ratio − 1| against η;
/// * ray: slope of log(G η^{1/2}) against η.
pub fn compare_sweep(regime: &Regime, grid: &[f64], cfg: &QuadratureConfig) -> Result<Vec<AsymptoticReport>> {
    if grid.is_empty() {
        return Ok(Vec::new());
    }
    let coef = match *regime {
        Regime::Eta0 { x, y, xi } => eta0_coefficient(x, y, xi, cfg)?,
        _ => 0.0,
    };
    let rows: Vec<(f64, f64, f64, f64)> = grid
        .par_iter()
        .map(|&p| -> Result<(f64, f64, f64, f64)> {
            let (q, predicted, eta) = match *regime {
                Regime::Eta0 { x, y, xi } => (GreenQuery::new(x, y, xi, p)?, coef * p.powf(1.5), p),
                Regime::EtaInf { x, y, xi } => (GreenQuery::new(x, y, xi, p)?, predict_eta_inf(x, y, xi, p)?, p),
                Regime::Ray { x, y, ray } => {
                    let xi = ray.sign_xi * p;
                    let eta = ray.m * p;
                    (GreenQuery::new(x, y, xi, eta)?, predict_ray(ray, x, y, xi)?, eta)
                }
            };
            let param = match *regime {
                Regime::Ray { ray, .. } => ray.sign_xi * p,
                _ => p,
            };
            Ok((param, eta, green_eval(&q, cfg)?.value, predicted))
        })
        .collect::<Result<_>>()?;
    let etas: Vec<f64> = rows.iter().map(|r| r.1).collect();
    let fitted = match regime {
        Regime::Eta0 { .. } => {
            let lx: Vec<f64> = etas.iter().map(|e| e.ln()).collect();
            fit_slope(&lx, &rows.iter().map(|r| r.2.ln()).collect::<Vec<_>>())
        }
        Regime::EtaInf { .. } => fit_slope(&etas, &rows.iter().map(|r| (r.2 / r.3 - 1.0).abs().ln()).collect::<Vec<_>>()),
        Regime::Ray { .. } => fit_slope(&etas, &rows.iter().map(|r| (r.2 * r.1.sqrt()).ln()).collect::<Vec<_>>()),
    };
    Ok(rows
        .into_iter()
        .map(|(parameter, _, numeric, predicted)| AsymptoticReport {
            parameter,
            numeric,
            predicted,
            ratio: numeric / predicted,
            fitted_rate: fitted,
        })
        .collect())
}

/// Empirical order of the remainder: slope of log|ratio − 1| against
/// log(parameter).
pub fn remainder_order(reports: &[AsymptoticReport]) -> f64 {
    let xs: Vec<f64> = reports.iter().map(|r| r.parameter.abs().ln()).collect();
    let ys: Vec<f64> = reports.iter().map(|r| (r.ratio - 1.0).abs().ln()).collect();
    fit_slope(&xs, &ys)
}
