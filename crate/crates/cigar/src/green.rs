//! Green's function of Δ − 1 through its real-line spectral integral
//!
//! G = pref/(2π) ∫₀^∞ Re k(s, y, η) e^{−A√(s²+¼)}/√(s²+¼) ds,
//! pref = ((1 − e^{−2y})(1 − e^{−2η}))^{−½}, A = |x − ξ|,
//!
//! with k(s, y, η) = (a(s)e^{−isy}f(s,y) + e^{isy}f̄(s,y)) e^{−isη} f(s,η).
//!
//! The real part factors as Re k = 2 g(s,y) g(s,η) where
//! g(s,y) = Re(R̂(s) e^{−isy} f(s,y)) = |R(s)| r(s,y)/2, R = Γ(3/2+is)/Γ(is),
//! R̂ = R/|R| and r(s,y) = √π e^{−y/2} sinh²y ₂F₁(¾−is/2, ¾+is/2; 2; −sinh²y).
//! The ₂F₁ form is used while s·sinh y is moderate; beyond that it becomes an
//! oscillatory cancellation and the f-form takes over.

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quad::{self, QuadResult};
use crate::specfun::{
    a_coefficient, c, check_height, f_hypergeo, hyp2f1, ln_gamma_half_shift, spectral_phase, spectral_ratio,
    spectral_ratio_norm_sqr, I,
};
use crate::surface::{metric_factor, SurfacePoint};

/// Switch point (in s·sinh y) between the two forms of g.
const PROFILE_SWITCH: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelForm {
    /// a(s)e^{−is(y+η)}f_y f_η + e^{is(y−η)}f̄_y f_η.
    Definition,
    /// R(s) r(s,y) e^{−isη} f(s,η).
    Product,
}

/// Both algebraic forms of k at one triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelEval {
    pub s: f64,
    pub k_def: C64,
    pub k_product: C64,
    pub re_k: f64,
}

impl KernelEval {
    pub fn new(s: f64, y: f64, eta: f64) -> Result<Self> {
        let k_def = kernel_k(s, y, eta, KernelForm::Definition)?;
        let k_product = kernel_k(s, y, eta, KernelForm::Product)?;
        Ok(Self { s, k_def, k_product, re_k: k_def.re })
    }

    /// |k_def − k_product| measured against 2|f_y||f_η|, the natural size of
    /// the two summands in the definition form (k itself can vanish).
    pub fn relative_gap(&self, y: f64, eta: f64) -> Result<f64> {
        let scale = 2.0 * f_hypergeo(self.s, y)?.norm() * f_hypergeo(self.s, eta)?.norm();
        Ok((self.k_def - self.k_product).norm() / scale)
    }
}

/// Φ(s, y) = ₂F₁(¾ − is/2, ¾ + is/2; 2; −sinh²y), real.
pub fn conical_profile(s: f64, y: f64) -> Result<f64> {
    check_height(y, "conical_profile")?;
    let sh = y.sinh();
    Ok(hyp2f1(C64::new(0.75, -0.5 * s), C64::new(0.75, 0.5 * s), c(2.0), -sh * sh)?.re)
}

/// r(s, y) = √π e^{−y/2} sinh²y Φ(s, y).
pub fn boundary_profile(s: f64, y: f64) -> Result<f64> {
    let sh = y.sinh();
    Ok(PI.sqrt() * (-0.5 * y).exp() * sh * sh * conical_profile(s, y)?)
}

/// k(s, y, η) in the selected algebraic form.
pub fn kernel_k(s: f64, y: f64, eta: f64, form: KernelForm) -> Result<C64> {
    check_height(y, "kernel_k")?;
    check_height(eta, "kernel_k")?;
    let f_eta = f_hypergeo(s, eta)?;
    let tail = C64::from_polar(1.0, -s * eta) * f_eta;
    match form {
        KernelForm::Definition => {
            let f_y = f_hypergeo(s, y)?;
            let head = a_coefficient(s) * C64::from_polar(1.0, -s * y) * f_y
                + C64::from_polar(1.0, s * y) * f_y.conj();
            Ok(head * tail)
        }
        KernelForm::Product => Ok(spectral_ratio(s) * boundary_profile(s, y)? * tail),
    }
}

/// g(s, y) with Re k(s, y, η) = 2 g(s, y) g(s, η); even in s.
pub fn spectral_profile(s: f64, y: f64) -> Result<f64> {
    check_height(y, "spectral_profile")?;
    let s = s.abs();
    if s == 0.0 {
        return Ok(0.0);
    }
    if s * y.sinh() <= PROFILE_SWITCH {
        Ok(0.5 * spectral_ratio_norm_sqr(s).sqrt() * boundary_profile(s, y)?)
    } else {
        Ok((spectral_phase(s) * C64::from_polar(1.0, -s * y) * f_hypergeo(s, y)?).re)
    }
}

/// Re k(s, y, η) through the manifestly real factorization.
pub fn re_k_spectral_density(s: f64, y: f64, eta: f64) -> Result<f64> {
    Ok(2.0 * spectral_profile(s, y)? * spectral_profile(s, eta)?)
}

/// |f(s, y)| ≤ 2 − √(1 − e^{−2y}) for every real s (termwise bound on the
/// series, since |(−½+is)_n/(1+is)_n| ≤ 1).
pub fn f_modulus_bound(y: f64) -> f64 {
    2.0 - (-(-2.0 * y).exp_m1()).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailPolicy {
    /// Truncate where the certified tail bound drops below tolerance; fail if
    /// that needs more than s_max.
    BoundByDecayRate,
    /// Integrate along rays tilted into the lower half-plane, where every
    /// piece of the density decays exponentially; needed when |x − ξ| is
    /// small or zero.
    ContourRotation,
}

/// Integration path for G.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Saddle route when the real-axis integral would cancel by more than
    /// two orders of magnitude, otherwise the real axis (falling back per
    /// the tail policy).
    #[default]
    Auto,
    RealAxis,
    Rotated,
    /// Steepest descent through the saddle of e^{−iση}e^{−|x−ξ|√(σ²+¼)}.
    Saddle,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub s_max: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_nodes: usize,
    pub tail_policy: TailPolicy,
    #[serde(default)]
    pub route: Route,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            s_max: 4000.0,
            rel_tol: 1e-12,
            abs_tol: 1e-300,
            max_nodes: 4_000_000,
            tail_policy: TailPolicy::ContourRotation,
            route: Route::Auto,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.s_max > 0.0) || !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) || self.max_nodes == 0 {
            return Err(Error::Domain(format!("invalid quadrature configuration {self:?}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GreenQuery {
    pub source: SurfacePoint,
    pub target: SurfacePoint,
}

impl GreenQuery {
    pub fn new(x: f64, y: f64, xi: f64, eta: f64) -> Result<Self> {
        Ok(Self { source: SurfacePoint::new(x, y)?, target: SurfacePoint::new(xi, eta)? })
    }

    pub fn swapped(&self) -> Self {
        Self { source: self.target, target: self.source }
    }

    fn separation(&self) -> f64 {
        (self.source.x - self.target.x).abs()
    }

    fn prefactor(&self) -> f64 {
        let e = |y: f64| -(-2.0 * y).exp_m1();
        1.0 / (e(self.source.y) * e(self.target.y)).sqrt()
    }

    /// Conformal estimate √P(ȳ)·|Δ| of the metric distance; adequate for the
    /// diagonal guard.
    pub fn approx_distance(&self) -> Result<f64> {
        let dx = self.source.x - self.target.x;
        let dy = self.source.y - self.target.y;
        let mid = 0.5 * (self.source.y + self.target.y);
        Ok(metric_factor(mid)?.sqrt() * dx.hypot(dy))
    }
}

/// G with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GreenValue {
    pub value: f64,
    pub error_estimate: f64,
    pub nodes_used: usize,
}

/// Integrand of the G integral at s (including the prefactor and 1/2π).
pub fn green_integrand(s: f64, q: &GreenQuery) -> Result<f64> {
    let m = (s * s + 0.25).sqrt();
    let rk = re_k_spectral_density(s, q.source.y, q.target.y)?;
    Ok(q.prefactor() / (2.0 * PI) * rk * (-q.separation() * m).exp() / m)
}

/// Overestimate of |integrand(t)| for every t ≥ s. Monotone in s; +∞ for
/// s ≤ 0.
pub fn integrand_tail_bound(s: f64, q: &GreenQuery) -> f64 {
    if !(s > 0.0) {
        return f64::INFINITY;
    }
    let m = (s * s + 0.25).sqrt();
    q.prefactor() / PI * f_modulus_bound(q.source.y) * f_modulus_bound(q.target.y)
        * (-q.separation() * m).exp()
        / m
}

/// Overestimate of ∫_s^∞ |integrand| via E₁(As) < e^{−As} log(1 + 1/(As)).
pub fn tail_integral_bound(s: f64, q: &GreenQuery) -> f64 {
    let a = q.separation();
    if !(s > 0.0) || a == 0.0 {
        return f64::INFINITY;
    }
    let z = a * s;
    q.prefactor() / PI * f_modulus_bound(q.source.y) * f_modulus_bound(q.target.y) * (-z).exp()
        * (1.0 + 1.0 / z).ln()
}

/// Integrates over [a, b] split into panels of width at most `width`,
/// panels in parallel, reduced pairwise in panel order.
pub(crate) fn panel_integral<F>(
    f: F,
    a: f64,
    b: f64,
    width: f64,
    rel_tol: f64,
    abs_tol: f64,
    budget: usize,
) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    if b <= a {
        return Ok(QuadResult { value: 0.0, error: 0.0, evals: 0 });
    }
    let n = ((b - a) / width).ceil().max(1.0) as usize;
    let h = (b - a) / n as f64;
    let edges: Vec<(f64, f64)> = (0..n)
        .map(|i| (a + h * i as f64, if i + 1 == n { b } else { a + h * (i + 1) as f64 }))
        .collect();
    // coarse pass to set a global absolute target
    let coarse: Vec<quad::Panel<f64>> = edges
        .par_iter()
        .map(|&(lo, hi)| quad::gk21(&mut |s| f(s), lo, hi))
        .collect::<Result<_>>()?;
    let scale = coarse.iter().map(|c| c.value).sum::<f64>().abs();
    let target = (rel_tol * scale).max(abs_tol) / (n as f64).sqrt();
    let per_panel = (budget / (21 * n)).max(8);
    let parts: Vec<QuadResult> = edges
        .par_iter()
        .map(|&(lo, hi)| quad::adaptive(&f, lo, hi, target, 0.0, per_panel))
        .collect::<Result<_>>()?;
    let value = quad::pairwise_sum(&parts.iter().map(|p| p.value).collect::<Vec<_>>());
    Ok(QuadResult {
        value,
        error: parts.iter().map(|p| p.error).sum(),
        evals: parts.iter().map(|p| p.evals).sum::<usize>() + 21 * n,
    })
}

/// Tilt of the rotated integration rays below the real axis.
pub const RAY_ANGLE: f64 = PI / 4.0;

/// One term of an s-integrand written as Re Σ P_j(s) on the real axis, where
/// P_j continues analytically into the open lower half-plane (minus the cut
/// of √(σ²+¼)) and decays there like e^{−ω_j·Im(−σ)}.
pub(crate) struct RayPiece<'a> {
    pub freq: f64,
    pub f: Box<dyn Fn(C64) -> Result<C64> + Sync + 'a>,
}

/// Integration paths in the lower half-plane, parametrized by t ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Contour {
    /// σ = t e^{−iφ}.
    Ray { angle: f64 },
    /// The steepest-descent hyperbola of −iσmA − A√(σ²+¼) through the saddle
    /// −i m/(2√(m²+1)); the segment from 0 to the saddle is omitted, which is
    /// exact for integrands that are real times dσ there.
    Saddle { m: f64 },
}

impl Contour {
    fn point(&self, t: f64) -> (C64, C64) {
        match *self {
            Contour::Ray { angle } => {
                let dir = C64::from_polar(1.0, -angle);
                (dir * t, dir)
            }
            Contour::Saddle { m } => {
                let q = (m * m + 1.0).sqrt();
                let root = (1.0 + 4.0 * q * q * t * t).sqrt();
                (C64::new(t, -m * root / (2.0 * q)), C64::new(1.0, -2.0 * m * q * t / root))
            }
        }
    }

    /// Asymptotic decay rate in t of e^{−iσω}e^{−A√(σ²+¼)}.
    fn decay_rate(&self, freq: f64, separation: f64) -> f64 {
        match *self {
            Contour::Ray { angle } => freq * angle.sin() + separation * angle.cos(),
            Contour::Saddle { m } => freq * m + separation,
        }
    }
}

/// Marches consecutive panels of width `width` along t ≥ 0 until two
/// successive panels fall below the tolerance, assuming a geometric tail of
/// ratio e^{−1.5} per panel.
fn march<G>(g: G, width: f64, rel_tol: f64, abs_tol: f64, budget: usize) -> Result<QuadResult<C64>>
where
    G: Fn(f64) -> Result<C64>,
{
    let mut total = C64::new(0.0, 0.0);
    let mut error = 0.0;
    let mut evals = 0;
    let mut quiet = 0;
    for k in 0.. {
        if evals > budget {
            return Err(Error::Tolerance { requested: abs_tol, achieved: error });
        }
        let lo = width * k as f64;
        let tol = (rel_tol * total.norm()).max(abs_tol) * 0.1;
        let r = quad::adaptive(&g, lo, lo + width, tol, rel_tol * 0.1, 4000)?;
        total += r.value;
        error += r.error;
        evals += r.evals;
        let tail = r.value.norm() * 0.29;
        if k >= 2 && tail < 0.1 * (rel_tol * total.norm()).max(abs_tol) {
            quiet += 1;
            if quiet == 2 {
                error += tail;
                break;
            }
        } else {
            quiet = 0;
        }
    }
    Ok(QuadResult { value: total, error, evals })
}

/// Re Σ_j ∫ P_j(σ) w(σ) dσ along `contour`, where the weight w decays like
/// e^{−A√(σ²+¼)} with A = `separation` (0 for algebraic weights).
pub(crate) fn contour_integral(
    pieces: &[RayPiece<'_>],
    weight: &(dyn Fn(C64) -> C64 + Sync),
    separation: f64,
    contour: Contour,
    rel_tol: f64,
    abs_tol: f64,
    budget: usize,
) -> Result<QuadResult> {
    let parts: Vec<QuadResult<C64>> = pieces
        .par_iter()
        .map(|piece| {
            let rate = contour.decay_rate(piece.freq, separation);
            if !(rate > 0.0) {
                return Err(Error::Divergent("contour integrand does not decay".into()));
            }
            let g = |t: f64| -> Result<C64> {
                let (sigma, ds) = contour.point(t);
                Ok((piece.f)(sigma)? * weight(sigma) * ds)
            };
            march(g, 1.5 / rate, rel_tol, abs_tol, budget)
        })
        .collect::<Result<_>>()?;
    Ok(QuadResult {
        value: parts.iter().map(|p| p.value.re).sum(),
        error: parts.iter().map(|p| p.error).sum(),
        evals: parts.iter().map(|p| p.evals).sum(),
    })
}

/// e^{−A√(σ²+¼)}/√(σ²+¼).
pub(crate) fn spectral_weight(separation: f64) -> impl Fn(C64) -> C64 + Sync {
    move |z: C64| {
        let m = (z * z + 0.25).sqrt();
        (-separation * m).exp() / m
    }
}

/// Re Σ_j ∫ P_j(σ) e^{−A√(σ²+¼)}/√(σ²+¼) dσ along the standard ray. By
/// Jordan's lemma this equals the real-axis integral whenever each P_j is
/// bounded by a power of |σ| in the quadrant.
pub(crate) fn rotated_integral(
    pieces: &[RayPiece<'_>],
    separation: f64,
    rel_tol: f64,
    abs_tol: f64,
    budget: usize,
) -> Result<QuadResult> {
    let w = spectral_weight(separation);
    contour_integral(pieces, &w, separation, Contour::Ray { angle: RAY_ANGLE }, rel_tol, abs_tol, budget)
}

/// Tail bound ∫_s^∞ |h| e^{−A√(t²+¼)}/√(t²+¼) dt for |h| ≤ `bound`, via
/// E₁(As) < e^{−As} log(1 + 1/(As)).
pub(crate) fn bounded_tail(bound: f64, separation: f64) -> impl Fn(f64) -> f64 {
    move |s: f64| {
        let z = separation * s;
        if !(z > 0.0) {
            return f64::INFINITY;
        }
        bound * (-z).exp() * (1.0 + 1.0 / z).ln()
    }
}

/// Certified real-axis evaluation of ∫₀^∞ h(s) e^{−A√(s²+¼)}/√(s²+¼) ds,
/// truncated where `tail(s)` (a bound on the remainder beyond s) falls below
/// tolerance. `freq` is the largest oscillation frequency of h. Returns None
/// when the truncation point would exceed s_max.
pub(crate) fn real_axis_integral<F, T>(
    h: F,
    separation: f64,
    tail: T,
    freq: f64,
    cfg: &QuadratureConfig,
) -> Result<Option<GreenValue>>
where
    F: Fn(f64) -> Result<f64> + Sync,
    T: Fn(f64) -> f64,
{
    cfg.validate()?;
    if separation == 0.0 {
        return Ok(None);
    }
    let integrand = |s: f64| -> Result<f64> {
        let m = (s * s + 0.25).sqrt();
        Ok(h(s)? * (-separation * m).exp() / m)
    };
    let width = (PI / freq.max(0.5)).min(2.0);
    let head = panel_integral(integrand, 0.0, 4.0, width, 1e-6, cfg.abs_tol, cfg.max_nodes)?;
    let target = (cfg.rel_tol * head.value.abs()).max(cfg.abs_tol);
    let mut s = 4.0;
    while tail(s) >= 0.25 * target {
        s *= 1.1;
        if s > cfg.s_max {
            return Ok(None);
        }
    }
    let body = panel_integral(integrand, 0.0, s, width, 0.5 * cfg.rel_tol, 0.5 * target, cfg.max_nodes)?;
    Ok(Some(GreenValue { value: body.value, error_estimate: body.error + tail(s), nodes_used: body.evals }))
}

/// Real-axis route when certified within s_max; otherwise (and under the
/// rotation policy) the rotated-ray route.
pub(crate) fn spectral_integral<F>(
    h: F,
    pieces: &[RayPiece<'_>],
    separation: f64,
    bound: f64,
    freq: f64,
    cfg: &QuadratureConfig,
) -> Result<GreenValue>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    if let Some(v) = real_axis_integral(h, separation, bounded_tail(bound, separation), freq, cfg)? {
        return Ok(v);
    }
    if cfg.tail_policy == TailPolicy::BoundByDecayRate {
        return Err(Error::Tolerance { requested: cfg.rel_tol, achieved: f64::INFINITY });
    }
    let r = rotated_integral(pieces, separation, cfg.rel_tol, cfg.abs_tol, cfg.max_nodes)?;
    Ok(GreenValue { value: r.value, error_estimate: r.error, nodes_used: r.evals })
}

/// The two analytic pieces of Re k(σ, y, η), oriented to decay below the
/// real axis: a(σ)e^{−iσ(y+η)}f(σ,y)f(σ,η) and e^{−iσ|y−η|}f(±σ,y)f(∓σ,η).
pub(crate) fn kernel_pieces(y: f64, eta: f64, scale: f64) -> [RayPiece<'static>; 2] {
    let (hi, lo) = if y >= eta { (y, eta) } else { (eta, y) };
    [
        RayPiece {
            freq: y + eta,
            f: Box::new(move |z: C64| {
                Ok(a_of_sigma(z)? * (-I * z * (y + eta)).exp() * f_complex(z, y)? * f_complex(z, eta)? * scale)
            }),
        },
        RayPiece {
            freq: hi - lo,
            f: Box::new(move |z: C64| {
                Ok((-I * z * (hi - lo)).exp() * f_complex(z, hi)? * f_complex(-z, lo)? * scale)
            }),
        },
    ]
}

/// a(σ) = −Γ(1−iσ)Γ(3/2+iσ)/(Γ(1+iσ)Γ(3/2−iσ)) for complex σ.
pub fn a_of_sigma(z: C64) -> Result<C64> {
    let iz = I * z;
    Ok(-(ln_gamma_half_shift(1.0 + iz)? - ln_gamma_half_shift(1.0 - iz)?).exp())
}

/// f(σ, y) = ₂F₁(−½, −½+iσ; 1+iσ; e^{−2y}) for complex σ.
pub fn f_complex(z: C64, y: f64) -> Result<C64> {
    let iz = I * z;
    hyp2f1(c(-0.5), iz - 0.5, iz + 1.0, (-2.0 * y).exp())
}

/// Slope parameter of the saddle hyperbola for a query: η_max/|x − ξ|.
/// The saddle route is skipped beyond this value, where the saddle crowds
/// the branch point −i/2.
const SADDLE_MAX_SLOPE: f64 = 64.0;

/// Size of G relative to its real-axis integrand, e^{−(√(η²+A²) − A)/2}.
fn cancellation_factor(eta: f64, separation: f64) -> f64 {
    (-0.5 * (eta.hypot(separation) - separation)).exp()
}

/// G(x, y, ξ, η).
pub fn green_eval(q: &GreenQuery, cfg: &QuadratureConfig) -> Result<GreenValue> {
    cfg.validate()?;
    let d = q.approx_distance()?;
    if d < 1e-2 {
        return Err(Error::NearDiagonal { distance: d });
    }
    let (y, eta) = (q.source.y, q.target.y);
    let a = q.separation();
    let pref = q.prefactor() / (2.0 * PI);
    let pieces = kernel_pieces(y, eta, pref);
    let hi = y.max(eta);
    let route = match cfg.route {
        Route::Auto if a > 0.0 && hi / a <= SADDLE_MAX_SLOPE && cancellation_factor(hi, a) < 1e-2 => Route::Saddle,
        r => r,
    };
    let packed = |r: QuadResult| GreenValue { value: r.value, error_estimate: r.error, nodes_used: r.evals };
    match route {
        Route::Saddle => {
            if a == 0.0 {
                return Err(Error::Domain("saddle route needs x ≠ ξ".into()));
            }
            let w = spectral_weight(a);
            let r = contour_integral(&pieces, &w, a, Contour::Saddle { m: hi / a }, cfg.rel_tol, cfg.abs_tol, cfg.max_nodes)?;
            Ok(packed(r))
        }
        Route::Rotated => Ok(packed(rotated_integral(&pieces, a, cfg.rel_tol, cfg.abs_tol, cfg.max_nodes)?)),
        Route::RealAxis | Route::Auto => {
            let bound = pref * 2.0 * f_modulus_bound(y) * f_modulus_bound(eta);
            let density = |s| Ok(pref * re_k_spectral_density(s, y, eta)?);
            if route == Route::RealAxis {
                return real_axis_integral(density, a, bounded_tail(bound, a), y + eta, cfg)?
                    .ok_or(Error::Tolerance { requested: cfg.rel_tol, achieved: f64::INFINITY });
            }
            spectral_integral(density, &pieces, a, bound, y + eta, cfg)
        }
    }
}

/// Relative residual |(∂ξξ + ∂ηη − P(η))G| / |P(η)G| at the target point,
/// from the five-point Laplacian with step h.
pub fn green_pde_residual(q: &GreenQuery, h: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(h > 0.0) || h >= q.target.y {
        return Err(Error::Domain(format!("finite-difference step must lie in (0, η), got {h}")));
    }
    let (xi, eta) = (q.target.x, q.target.y);
    let offsets = [(0.0, 0.0), (h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h)];
    let vals: Vec<f64> = offsets
        .par_iter()
        .map(|&(dx, dy)| {
            let shifted = GreenQuery { source: q.source, target: SurfacePoint::new(xi + dx, eta + dy)? };
            Ok(green_eval(&shifted, cfg)?.value)
        })
        .collect::<Result<_>>()?;
    let lap = (vals[1] + vals[2] + vals[3] + vals[4] - 4.0 * vals[0]) / (h * h);
    let p = metric_factor(eta)?;
    Ok((lap - p * vals[0]).abs() / (p * vals[0]).abs())
}

/// ∫_ℝ G(x, y, ξ, η) dξ from the spectral side:
/// pref/(2π) ∫₀^∞ Re k · 2/(s² + ¼) ds. Requires y ≠ η.
pub fn zero_mode_integral(y: f64, eta: f64, cfg: &QuadratureConfig) -> Result<GreenValue> {
    check_height(y, "zero_mode_integral")?;
    check_height(eta, "zero_mode_integral")?;
    if y == eta {
        return Err(Error::NearDiagonal { distance: 0.0 });
    }
    let q = GreenQuery::new(0.0, y, 0.0, eta)?;
    let pieces = kernel_pieces(y, eta, q.prefactor() / (2.0 * PI));
    let weight = |z: C64| 2.0 / (z * z + 0.25);
    let ray = Contour::Ray { angle: RAY_ANGLE };
    let r = contour_integral(&pieces, &weight, 0.0, ray, cfg.rel_tol, cfg.abs_tol, cfg.max_nodes)?;
    Ok(GreenValue { value: r.value, error_estimate: r.error, nodes_used: r.evals })
}

/// The one-dimensional Green function of −d²/dy² + P(y) with decay at both
/// ends: W₀(min)·D(max), D = e^{y/2}/√(e^{2y}−1), W₀ = (e^y−1)²/(e^{y/2}√(e^{2y}−1)),
/// whose Wronskian is exactly 1.
pub fn zero_mode_green(y: f64, eta: f64) -> Result<f64> {
    check_height(y, "zero_mode_green")?;
    check_height(eta, "zero_mode_green")?;
    let (lo, hi) = if y <= eta { (y, eta) } else { (eta, y) };
    Ok(crate::sturm::w0(lo) * crate::sturm::decaying_zero_mode(hi))
}
