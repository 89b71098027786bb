//! Fundamental solutions of A w = −w″ + P w = λ w on (0, ∞), Wronskians, the
//! spectral expansion of A and a discrete-spectrum scan.
//!
//! P(x) = ¼ + 3/(4 sinh²x). With α = √(¼ − λ) the two hypergeometric
//! solutions are
//! w_α(x) = e^{−αx}(1 − e^{−2x})^{−½}·₂F₁(−½, −½+α; 1+α; e^{−2x})
//! and w_{−α}; on the continuous spectrum λ = ¼ + s², α = −is and
//! w_{−α} = w(s, ·).

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quad::{adaptive, composite_gl, pairwise_sum};
use crate::specfun::{
    a_coefficient, a_of_alpha, alpha_of_lambda, c, check_height, hyp2f1, hyp2f1_deriv,
    legendre_q_coth, w_solution, GammaRatio,
};

/// W₀(y) = (e^y − 1)²/(e^{y/2}√(e^{2y} − 1)): the λ = 0 solution vanishing at 0.
pub fn w0(y: f64) -> f64 {
    (0.5 * y).exp() * (-y).exp_m1().powi(2) / (-(-2.0 * y).exp_m1()).sqrt()
}

/// D(y) = e^{y/2}/√(e^{2y} − 1): the λ = 0 solution decaying at ∞.
pub fn decaying_zero_mode(y: f64) -> f64 {
    (-0.5 * y).exp() / (-(-2.0 * y).exp_m1()).sqrt()
}

/// P(x) = ¼ + 3/(4 sinh²x).
pub fn potential(x: f64) -> f64 {
    let sh = x.sinh();
    0.25 + 0.75 / (sh * sh)
}

/// Distance from an integer below which α is treated as exactly integral.
const INTEGER_SNAP: f64 = 1e-12;

/// Spectral parameter λ together with α(λ) on the principal branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralParam {
    pub lambda: C64,
    pub alpha: C64,
}

impl SpectralParam {
    pub fn from_lambda(lambda: C64) -> Self {
        Self { lambda, alpha: alpha_of_lambda(lambda) }
    }

    /// λ = ¼ + s², α = −is.
    pub fn from_s(s: f64) -> Self {
        Self { lambda: c(0.25 + s * s), alpha: C64::new(0.0, -s) }
    }

    pub fn case(&self) -> SolutionCase {
        let a = self.alpha;
        if a.im.abs() <= INTEGER_SNAP && a.re >= -INTEGER_SNAP {
            let m = a.re.round();
            if (a.re - m).abs() <= INTEGER_SNAP {
                return SolutionCase::IntegerM(m as u32);
            }
            if (a.re - 0.5).abs() <= INTEGER_SNAP {
                return SolutionCase::LambdaZero;
            }
        }
        SolutionCase::GenericAlpha
    }
}

/// Which closed form the fundamental pair uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolutionCase {
    GenericAlpha,
    IntegerM(u32),
    LambdaZero,
}

/// Value and x-derivative of a solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub value: C64,
    pub deriv: C64,
}

/// w_α and its derivative.
fn hyper_jet(alpha: C64, x: f64) -> Result<Jet> {
    let z = (-2.0 * x).exp();
    let one_minus = -(-2.0 * x).exp_m1();
    let (a, b, cc) = (c(-0.5), -0.5 + alpha, 1.0 + alpha);
    let f = hyp2f1(a, b, cc, z)?;
    let df = hyp2f1_deriv(a, b, cc, z)?;
    let pre = (-alpha * x).exp() / one_minus.sqrt();
    // d/dx log pre = −α − e^{−2x}/(1 − e^{−2x})
    let dlog = -alpha - z / one_minus;
    Ok(Jet { value: pre * f, deriv: pre * (dlog * f - 2.0 * z * df) })
}

/// 5-point central difference.
fn fd_deriv<F: Fn(f64) -> Result<C64>>(f: &F, x: f64, h: f64) -> Result<C64> {
    Ok((f(x - 2.0 * h)? - 8.0 * f(x - h)? + 8.0 * f(x + h)? - f(x + 2.0 * h)?) / (12.0 * h))
}

/// The fundamental pair of A w = λ w for one λ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalPair {
    pub case: SolutionCase,
    pub param: SpectralParam,
}

impl FundamentalPair {
    pub fn new(lambda: C64) -> Self {
        let param = SpectralParam::from_lambda(lambda);
        Self { case: param.case(), param }
    }

    pub fn from_param(param: SpectralParam) -> Self {
        Self { case: param.case(), param }
    }

    /// Γ(3/2+m)/(Γ(3/2−m)Γ(1+m)), the factor turning w_m into P^m_{1/2}.
    fn legendre_prefactor(m: u32) -> Result<f64> {
        let mf = m as f64;
        Ok(GammaRatio::new(&[c(1.5 + mf)], &[c(1.5 - mf), c(1.0 + mf)])?.value.re)
    }

    fn q_value(m: u32, x: f64) -> Result<C64> {
        Ok(c(legendre_q_coth(m, x)?))
    }

    /// (w₁, w₂) with derivatives.
    pub fn jets(&self, x: f64) -> Result<(Jet, Jet)> {
        check_height(x, "fundamental_solutions")?;
        match self.case {
            SolutionCase::GenericAlpha => {
                Ok((hyper_jet(self.param.alpha, x)?, hyper_jet(-self.param.alpha, x)?))
            }
            SolutionCase::LambdaZero => {
                let d = decaying_zero_mode(x);
                let coth = 1.0 / x.tanh();
                // w₂ = (e^{2x}+1)/(e^{x/2}√(e^{2x}−1)) = 2 cosh x · D
                let w2 = 2.0 * x.cosh() * d;
                let dd = -0.5 * coth * d;
                let dw2 = 2.0 * (x.sinh() * d + x.cosh() * dd);
                Ok((Jet { value: c(d), deriv: c(dd) }, Jet { value: c(w2), deriv: c(dw2) }))
            }
            SolutionCase::IntegerM(m) => {
                let g = Self::legendre_prefactor(m)?;
                let w = hyper_jet(c(m as f64), x)?;
                let q = |t: f64| Self::q_value(m, t);
                let h = 1e-3 * x.min(1.0);
                Ok((
                    Jet { value: g * w.value, deriv: g * w.deriv },
                    Jet { value: q(x)?, deriv: fd_deriv(&q, x, h)? },
                ))
            }
        }
    }

    pub fn eval(&self, x: f64) -> Result<(C64, C64)> {
        let (j1, j2) = self.jets(x)?;
        Ok((j1.value, j2.value))
    }

    /// The Wronskian the closed forms predict: 2α for the hypergeometric
    /// pairs, (−1)^m Γ(3/2+m)/Γ(3/2−m) for (P^m_{1/2}, Q^m_{1/2}).
    pub fn expected_wronskian(&self) -> Result<C64> {
        match self.case {
            SolutionCase::GenericAlpha => Ok(2.0 * self.param.alpha),
            SolutionCase::LambdaZero => Ok(c(1.0)),
            SolutionCase::IntegerM(m) => {
                let mf = m as f64;
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                Ok(sign * GammaRatio::new(&[c(1.5 + mf)], &[c(1.5 - mf)])?.value)
            }
        }
    }

    /// The combination regular at 0, scaled so its larger coefficient is 1:
    /// w₁ + a w₂ (or w₂ + w₁/a when |a| > 1) in the hypergeometric cases,
    /// Q^m_{1/2} for integer m.
    pub fn regular_coefficients(&self) -> Result<(C64, C64)> {
        match self.case {
            SolutionCase::IntegerM(_) => Ok((c(0.0), c(1.0))),
            _ => {
                let alpha = self.param.alpha;
                match a_of_alpha(alpha) {
                    Ok(a) if a.norm() <= 1.0 => Ok((c(1.0), a)),
                    _ => {
                        let inv = -GammaRatio::new(&[1.0 - alpha, 1.5 + alpha], &[1.0 + alpha, 1.5 - alpha])?
                            .value;
                        Ok((inv, c(1.0)))
                    }
                }
            }
        }
    }
}

/// (w₁(x), w₂(x)) for the case λ falls in.
pub fn fundamental_solutions(lambda: C64, x: f64) -> Result<(C64, C64)> {
    FundamentalPair::new(lambda).eval(x)
}

/// −w″ + (P − λ)w by central differences, relative to max(|w|, |λ w|, |P w|).
pub fn ode_residual<F: Fn(f64) -> Result<C64>>(w: F, lambda: C64, x: f64, h: f64) -> Result<f64> {
    let w0 = w(x)?;
    let w2 = (w(x + h)? - 2.0 * w0 + w(x - h)?) / (h * h);
    let res = -w2 + (potential(x) - lambda) * w0;
    let scale = w0.norm() * (1.0 + lambda.norm() + potential(x));
    Ok(res.norm() / scale)
}

/// W(f, g) = f g′ − g f′ with 5-point differences.
pub fn numeric_wronskian<F, G>(f: F, g: G, x: f64, h: f64) -> Result<C64>
where
    F: Fn(f64) -> Result<C64>,
    G: Fn(f64) -> Result<C64>,
{
    Ok(f(x)? * fd_deriv(&g, x, h)? - g(x)? * fd_deriv(&f, x, h)?)
}

/// Step used for the differentiated Wronskians.
const WRONSKIAN_STEP: f64 = 1e-3;

/// W(w₁, w₂) at x, numerically differentiated.
pub fn wronskian(lambda: C64, x: f64) -> Result<C64> {
    check_height(x, "wronskian")?;
    let pair = FundamentalPair::new(lambda);
    let h = WRONSKIAN_STEP * x.min(1.0);
    numeric_wronskian(|t| Ok(pair.eval(t)?.0), |t| Ok(pair.eval(t)?.1), x, h)
}

/// W(w_a, w_b) with w_a = w₁ + a(λ) w₂, w_b = w₁; equals −2α a(λ).
pub fn wronskian_ab(lambda: C64, x: f64) -> Result<C64> {
    check_height(x, "wronskian_ab")?;
    let pair = FundamentalPair::new(lambda);
    if pair.case != SolutionCase::GenericAlpha {
        return Err(Error::Unsupported("w_a, w_b need a non-integer α".into()));
    }
    let a = a_of_alpha(pair.param.alpha)?;
    let h = WRONSKIAN_STEP * x.min(1.0);
    numeric_wronskian(
        |t| {
            let (w1, w2) = pair.eval(t)?;
            Ok(w1 + a * w2)
        },
        |t| Ok(pair.eval(t)?.0),
        x,
        h,
    )
}

/// Regular point of the expansion construction.
pub const REGULAR_POINT: f64 = 1.0;

/// w(s, ·) and ∂ₓw(s, ·) at x.
pub fn w_jet(s: f64, x: f64) -> Result<Jet> {
    hyper_jet(C64::new(0.0, s), x)
}

/// ρ′(s) for the basis (u₁, u₂) at the regular point c.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralDensityMatrix {
    pub s: f64,
    pub rho11: f64,
    pub rho12: f64,
    pub rho22: f64,
}

impl SpectralDensityMatrix {
    /// ρ′ = (1/2π)·Bᵀ M B with B = [[b₁, b₂], [b̄₁, b̄₂]], M = [[a, 1], [1, ā]],
    /// b₁ = w(s, c), b₂ = ∂ₓw(s, c).
    pub fn new(s: f64, regular_point: f64) -> Result<Self> {
        if !(s > 0.0) {
            return Err(Error::Domain(format!("spectral density needs s > 0, got {s}")));
        }
        check_height(regular_point, "regular point")?;
        let b = w_jet(s, regular_point)?;
        let a = a_coefficient(s);
        let (b1, b2) = (b.value, b.deriv);
        Ok(Self {
            s,
            rho11: (b1.norm_sqr() + (a * b1 * b1).re) / PI,
            rho12: (a * b1 * b2 + b1.conj() * b2).re / PI,
            rho22: (b2.norm_sqr() + (a * b2 * b2).re) / PI,
        })
    }

    pub fn eigenvalues(&self) -> (f64, f64) {
        let mean = 0.5 * (self.rho11 + self.rho22);
        let half = 0.5 * (self.rho11 - self.rho22);
        let r = half.hypot(self.rho12);
        (mean - r, mean + r)
    }

    /// Σⱼₖ uⱼ(s, x) ρ′ⱼₖ uₖ(s, y) with u₁ = (i/2s)(−b̄₂ w + b₂ w̄),
    /// u₂ = (i/2s)(b̄₁ w − b₁ w̄).
    pub fn expansion_density(&self, regular_point: f64, x: f64, y: f64) -> Result<f64> {
        let s = self.s;
        let b = w_jet(s, regular_point)?;
        let (b1, b2) = (b.value, b.deriv);
        let k = C64::new(0.0, 0.5 / s);
        let u = |t: f64| -> Result<(C64, C64)> {
            let w = w_solution(s, t)?;
            Ok((k * (-b2.conj() * w + b2 * w.conj()), k * (b1.conj() * w - b1 * w.conj())))
        };
        let (u1x, u2x) = u(x)?;
        let (u1y, u2y) = u(y)?;
        let v = u1x * self.rho11 * u1y
            + u1x * self.rho12 * u2y
            + u2x * self.rho12 * u1y
            + u2x * self.rho22 * u2y;
        Ok(v.re)
    }
}

type Mat2 = [[C64; 2]; 2];

fn mul(p: &Mat2, q: &Mat2) -> Mat2 {
    let mut r = [[c(0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = p[i][0] * q[0][j] + p[i][1] * q[1][j];
        }
    }
    r
}

/// The product
/// [[−b̄₂, b̄₁], [b₂, −b₁]]·[[b₁, b̄₁], [b₂, b̄₂]]·M·[[b₁, b₂], [b̄₁, b̄₂]]·[[−b̄₂, b₂], [b̄₁, −b₁]]
/// and the value −4s²M it reduces to.
pub fn five_matrix_product(s: f64, regular_point: f64) -> Result<(Mat2, Mat2)> {
    let b = w_jet(s, regular_point)?;
    let (b1, b2) = (b.value, b.deriv);
    let (c1, c2) = (b1.conj(), b2.conj());
    let a = a_coefficient(s);
    let m = [[a, c(1.0)], [c(1.0), a.conj()]];
    let lhs = [[-c2, c1], [b2, -b1]];
    let bt = [[b1, c1], [b2, c2]];
    let bb = [[b1, b2], [c1, c2]];
    let rhs = [[-c2, b2], [c1, -b1]];
    let prod = mul(&mul(&mul(&mul(&lhs, &bt), &m), &bb), &rhs);
    let k = -4.0 * s * s;
    Ok((prod, [[k * m[0][0], k * m[0][1]], [k * m[1][0], k * m[1][1]]]))
}

/// (1/π) Re{a(s) w(s,x) w(s,y) + w̄(s,x) w(s,y)}.
pub fn kernel_density(s: f64, x: f64, y: f64) -> Result<f64> {
    let wx = w_solution(s, x)?;
    let wy = w_solution(s, y)?;
    Ok((a_coefficient(s) * wx * wy + wx.conj() * wy).re / PI)
}

/// K(x, y) truncated to s ∈ [0, s_max]. The untruncated integral only
/// converges as a distribution.
pub fn spectral_kernel(x: f64, y: f64, s_max: f64) -> Result<f64> {
    check_height(x, "spectral_kernel")?;
    check_height(y, "spectral_kernel")?;
    if !(s_max > 0.0) || !s_max.is_finite() {
        return Err(Error::Domain(format!("s_max must be positive and finite, got {s_max}")));
    }
    let r = adaptive(|s| kernel_density(s, x, y), 0.0, s_max, 1e-13, 1e-11, 4000)?;
    Ok(r.value)
}

/// Samples of a real function on an increasing grid in (0, ∞).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledFunction {
    pub x: Vec<f64>,
    pub values: Vec<f64>,
}

impl SampledFunction {
    pub fn new(x: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if x.len() != values.len() || x.len() < 2 {
            return Err(Error::Domain("samples need matching grids of length ≥ 2".into()));
        }
        if x[0] <= 0.0 || x.windows(2).any(|p| !(p[1] > p[0])) || !x[x.len() - 1].is_finite() {
            return Err(Error::Domain("sample grid must be increasing and inside (0, ∞)".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("sample values"));
        }
        Ok(Self { x, values })
    }

    pub fn from_fn<F: Fn(f64) -> f64>(x: Vec<f64>, f: F) -> Result<Self> {
        let values = x.iter().map(|&t| f(t)).collect();
        Self::new(x, values)
    }

    /// Trapezoid weights on the sample grid.
    fn weights(&self) -> Vec<f64> {
        let n = self.x.len();
        (0..n)
            .map(|i| {
                let left = if i > 0 { self.x[i] - self.x[i - 1] } else { 0.0 };
                let right = if i + 1 < n { self.x[i + 1] - self.x[i] } else { 0.0 };
                0.5 * (left + right)
            })
            .collect()
    }

    pub fn l2_norm(&self) -> f64 {
        let w = self.weights();
        pairwise_sum(&self.values.iter().zip(&w).map(|(v, w)| v * v * w).collect::<Vec<_>>()).sqrt()
    }
}

/// Quadrature in s for the inverse transform: Gauss–Legendre panels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralGrid {
    pub panel_width: f64,
    pub nodes_per_panel: usize,
}

impl Default for SpectralGrid {
    fn default() -> Self {
        Self { panel_width: 0.5, nodes_per_panel: 16 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reconstruction {
    pub s_max: f64,
    pub x: Vec<f64>,
    pub values: Vec<f64>,
    /// ‖ĥ − h‖/‖h‖ on the sample grid (absolute when h = 0).
    pub relative_l2_error: f64,
}

/// h(x) ≈ (1/π)∫₀^{s_max} Re{(a(s) w(s,x) + w̄(s,x))·H(s)} ds with
/// H(s) = ∫ w(s,y) h(y) dy: the transform is taken first so no kernel
/// integral has to converge on its own. Fails when the relative L² error
/// exceeds `bound`.
pub fn reconstruct(
    h: &SampledFunction,
    s_max: f64,
    grid: SpectralGrid,
    bound: Option<f64>,
) -> Result<Reconstruction> {
    if !(s_max > 0.0) || !s_max.is_finite() {
        return Err(Error::Domain(format!("s_max must be positive and finite, got {s_max}")));
    }
    if !(grid.panel_width > 0.0) || grid.nodes_per_panel == 0 {
        return Err(Error::Domain("spectral grid needs positive panel width and nodes".into()));
    }
    let panels = (s_max / grid.panel_width).ceil().max(1.0) as usize;
    let breaks: Vec<f64> = (0..=panels).map(|i| s_max * i as f64 / panels as f64).collect();
    let (nodes, weights) = composite_gl(&breaks, grid.nodes_per_panel);
    let yw = h.weights();
    let n = h.x.len();
    // one contribution vector per s node, summed in node order afterwards
    let contributions: Vec<Vec<f64>> = nodes
        .par_iter()
        .zip(weights.par_iter())
        .map(|(&s, &ws)| -> Result<Vec<f64>> {
            let w: Vec<C64> = h.x.iter().map(|&t| w_solution(s, t)).collect::<Result<_>>()?;
            let terms: Vec<C64> = (0..n).map(|i| w[i] * (h.values[i] * yw[i])).collect();
            let transform = pairwise_sum(&terms);
            let a = a_coefficient(s);
            Ok(w.iter().map(|wx| ws / PI * ((a * wx + wx.conj()) * transform).re).collect())
        })
        .collect::<Result<_>>()?;
    let values: Vec<f64> = (0..n)
        .map(|i| pairwise_sum(&contributions.iter().map(|col| col[i]).collect::<Vec<_>>()))
        .collect();
    let diff = SampledFunction {
        x: h.x.clone(),
        values: values.iter().zip(&h.values).map(|(r, v)| r - v).collect(),
    };
    let norm = h.l2_norm();
    let err = if norm > 0.0 { diff.l2_norm() / norm } else { diff.l2_norm() };
    if let Some(b) = bound {
        if err > b {
            return Err(Error::Tolerance { requested: b, achieved: err });
        }
    }
    Ok(Reconstruction { s_max, x: h.x.clone(), values, relative_l2_error: err })
}

/// Which branch of the discrete-spectrum argument a λ falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanCase {
    /// λ > ¼: both solutions oscillate at ∞.
    Oscillatory,
    /// λ < ¼ with non-integer α (λ = 0 included).
    Generic,
    /// α = m: w₂ = Q^m_{1/2}.
    IntegerM,
}

/// One λ of the scan. Exponents near 0 are slopes of log|w| against log x;
/// growth rates at ∞ are slopes of log|w| against x.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub lambda: f64,
    pub case: ScanCase,
    pub alpha_re: f64,
    pub alpha_im: f64,
    pub zero_exponents: [f64; 2],
    pub growth_rates: [f64; 2],
    /// Exponent at 0 and growth at ∞ of the solution regular at 0.
    pub regular_exponent: f64,
    pub regular_growth: f64,
    pub no_l2_eigenfunction: bool,
    pub inconclusive: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
    /// λ values where some solution looked square-integrable at both ends.
    pub eigenfunction_flags: usize,
    pub inconclusive: usize,
}

/// Fit windows for the growth classification.
const FIT_INFINITY: (f64, f64) = (5.0, 15.0);
const FIT_ZERO: (f64, f64) = (1e-3, 1e-1);
const FIT_SAMPLES: usize = 21;
/// Frobenius exponents at 0 are −½ and 3/2; x^p is L² near 0 iff p > −½,
/// so fits are split halfway.
const ZERO_EXPONENT_SPLIT: f64 = 0.5;
/// A growth rate below −DECAY_MARGIN counts as decay at ∞.
const DECAY_MARGIN: f64 = 1e-2;
/// α within this distance of an integer (but not snapped to it) is reported
/// as inconclusive: the hypergeometric pair degenerates there.
const INTEGER_BAND: f64 = 1e-6;
/// Keep-out radius around the branch point λ = ¼.
pub const BRANCH_KEEP_OUT: f64 = 1e-3;

pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn growth_rate<F: Fn(f64) -> Result<C64>>(w: &F) -> Result<f64> {
    let (lo, hi) = FIT_INFINITY;
    let xs: Vec<f64> = (0..FIT_SAMPLES).map(|i| lo + (hi - lo) * i as f64 / (FIT_SAMPLES - 1) as f64).collect();
    let ys: Vec<f64> = xs.iter().map(|&x| Ok(w(x)?.norm().ln())).collect::<Result<_>>()?;
    Ok(fit_slope(&xs, &ys))
}

fn zero_exponent<F: Fn(f64) -> Result<C64>>(w: &F) -> Result<f64> {
    let (lo, hi) = (FIT_ZERO.0.ln(), FIT_ZERO.1.ln());
    let ls: Vec<f64> = (0..FIT_SAMPLES).map(|i| lo + (hi - lo) * i as f64 / (FIT_SAMPLES - 1) as f64).collect();
    let ys: Vec<f64> = ls.iter().map(|&l| Ok(w(l.exp())?.norm().ln())).collect::<Result<_>>()?;
    Ok(fit_slope(&ls, &ys))
}

/// Classify one real λ.
pub fn scan_point(lambda: f64) -> Result<ScanRow> {
    if !lambda.is_finite() {
        return Err(Error::NonFinite("scan λ"));
    }
    if (lambda - 0.25).abs() < BRANCH_KEEP_OUT {
        return Err(Error::Domain(format!("λ = {lambda} is inside the keep-out around ¼")));
    }
    let pair = FundamentalPair::new(c(lambda));
    let alpha = pair.param.alpha;
    let w1 = |x: f64| Ok(pair.eval(x)?.0);
    let w2 = |x: f64| Ok(pair.eval(x)?.1);
    let zero_exponents = [zero_exponent(&w1)?, zero_exponent(&w2)?];
    let growth_rates = [growth_rate(&w1)?, growth_rate(&w2)?];
    let (case, inconclusive) = if lambda > 0.25 {
        (ScanCase::Oscillatory, false)
    } else if let SolutionCase::IntegerM(_) = pair.case {
        (ScanCase::IntegerM, false)
    } else {
        let d = (alpha.re - alpha.re.round()).abs();
        (ScanCase::Generic, d < INTEGER_BAND)
    };
    let (c1, c2) = pair.regular_coefficients()?;
    let regular = |x: f64| {
        let (a, b) = pair.eval(x)?;
        Ok(c1 * a + c2 * b)
    };
    let regular_exponent = zero_exponent(&regular)?;
    let regular_growth = growth_rate(&regular)?;
    let l2_at_zero = |p: f64| p > ZERO_EXPONENT_SPLIT;
    let decays = |g: f64| g < -DECAY_MARGIN;
    let no_l2_eigenfunction = match case {
        // e^{±isx}: no combination has a decaying mean square at ∞
        ScanCase::Oscillatory => !decays(growth_rates[0]) && !decays(growth_rates[1]),
        // the solutions square-integrable at 0 form a line; it must fail at ∞
        _ => {
            let one_dimensional = !(l2_at_zero(zero_exponents[0]) && l2_at_zero(zero_exponents[1]));
            let regular_ok = l2_at_zero(regular_exponent);
            one_dimensional && regular_ok && !decays(regular_growth)
        }
    };
    Ok(ScanRow {
        lambda,
        case,
        alpha_re: alpha.re,
        alpha_im: alpha.im,
        zero_exponents,
        growth_rates,
        regular_exponent,
        regular_growth,
        no_l2_eigenfunction: no_l2_eigenfunction && !inconclusive,
        inconclusive,
    })
}

/// Run `scan_point` over a grid in parallel; rows keep the grid order.
pub fn discrete_spectrum_scan(lambdas: &[f64]) -> Result<ScanReport> {
    let rows: Vec<ScanRow> = lambdas.par_iter().map(|&l| scan_point(l)).collect::<Result<_>>()?;
    let eigenfunction_flags = rows.iter().filter(|r| !r.no_l2_eigenfunction && !r.inconclusive).count();
    let inconclusive = rows.iter().filter(|r| r.inconclusive).count();
    Ok(ScanReport { rows, eigenfunction_flags, inconclusive })
}
