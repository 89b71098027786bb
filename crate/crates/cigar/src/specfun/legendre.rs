//! Associated Legendre functions P^m_{1/2}(z), Q^m_{1/2}(z) for z > 1 and
//! integer order m ≥ 0.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::{c, digamma, hyp2f1, GammaRatio};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LegendreKind {
    P,
    Q,
}

/// P^m_{1/2}(z) or Q^m_{1/2}(z) for z > 1.
///
/// P uses P^m = Γ(3/2+m)/Γ(3/2−m)·P^{−m} with
/// P^{−m}_{1/2}(z) = ((z−1)/(z+1))^{m/2}/m!·₂F₁(3/2, −½; 1+m; (1−z)/2).
/// Q uses the 1/z² series
/// (−1)^m √π Γ(3/2+m)/(2√2)·(z²−1)^{m/2}/z^{3/2+m}·₂F₁(m/2+¾, m/2+5/4; 2; 1/z²).
pub fn legendre_halforder(kind: LegendreKind, m: u32, z: f64) -> Result<f64> {
    if !(z > 1.0) || !z.is_finite() {
        return Err(Error::Domain(format!("Legendre argument must exceed 1, got {z}")));
    }
    let mf = m as f64;
    match kind {
        LegendreKind::P => {
            let g = GammaRatio::new(&[c(1.5 + mf)], &[c(1.5 - mf), c(1.0 + mf)])?.value.re;
            let pre = ((z - 1.0) / (z + 1.0)).powf(0.5 * mf);
            let f = hyp2f1(c(1.5), c(-0.5), c(1.0 + mf), 0.5 * (1.0 - z))?;
            Ok(g * pre * f.re)
        }
        LegendreKind::Q => {
            let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
            let g = GammaRatio::new(&[c(1.5 + mf)], &[])?.value.re;
            // (z²−1)^{m/2}/z^{3/2+m} = (1 − z^{−2})^{m/2} z^{−3/2}
            let pre = (1.0 - 1.0 / (z * z)).powf(0.5 * mf) * z.powf(-1.5);
            let f: C64 = hyp2f1(c(0.5 * mf + 0.75), c(0.5 * mf + 1.25), c(2.0), 1.0 / (z * z))?;
            Ok(sign * PI.sqrt() * g / (2.0 * 2f64.sqrt()) * pre * f.re)
        }
    }
}

/// Q^m_{1/2}(coth x), x > 0. Near z = 1 the 1/z² series is rewritten around
/// t = tanh²x = 1 with the exact 1 − t = sech²x, so no precision is lost to
/// forming coth x − 1.
pub fn legendre_q_coth(m: u32, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("legendre_q_coth needs x > 0, got {x}")));
    }
    let u = 1.0 / x.cosh().powi(2);
    if u > 0.5 {
        return legendre_halforder(LegendreKind::Q, m, 1.0 / x.tanh());
    }
    let mf = m as f64;
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    let g = GammaRatio::new(&[c(1.5 + mf)], &[])?.value.re;
    // (z²−1)^{m/2}/z^{3/2+m} = sinh^{−m}x·tanh^{3/2+m}x
    let pre = x.tanh().powf(1.5 + mf) / x.sinh().powi(m as i32);
    let f = hyp2f1_near_one_log(0.5 * mf + 0.75, 0.5 * mf + 1.25, m, u)?;
    Ok(sign * PI.sqrt() * g / (2.0 * 2f64.sqrt()) * pre * f)
}

/// ₂F₁(a, b; a+b−m; 1−u) for integer m ≥ 0 and small u > 0: the
/// logarithmic connection formula around 1, with a − m, b − m, a, b not
/// non-positive integers.
fn hyp2f1_near_one_log(a: f64, b: f64, m: u32, u: f64) -> Result<f64> {
    let mf = m as f64;
    let mut head = 0.0;
    if m > 0 {
        let g = GammaRatio::new(&[c(mf), c(a + b - mf)], &[c(a), c(b)])?.value.re;
        let mut term = 1.0;
        let mut sum = 0.0;
        for n in 0..m {
            let nf = n as f64;
            sum += term;
            term *= (a - mf + nf) * (b - mf + nf) / ((nf + 1.0) * (1.0 - mf + nf)) * u;
        }
        head = g * u.powi(-(m as i32)) * sum;
    }
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    let g = GammaRatio::new(&[c(a + b - mf)], &[c(a - mf), c(b - mf)])?.value.re;
    let ln_u = u.ln();
    let mut psi_n1 = digamma(c(1.0))?.re;
    let mut psi_nm1 = digamma(c(mf + 1.0))?.re;
    let mut psi_a = digamma(c(a))?.re;
    let mut psi_b = digamma(c(b))?.re;
    // (a)_n (b)_n u^n / (n! (n+m)!)
    let mut coef = 1.0 / (1..=m).map(|k| k as f64).product::<f64>();
    let mut sum = 0.0;
    for n in 0..500 {
        let nf = n as f64;
        let t = coef * (ln_u - psi_n1 - psi_nm1 + psi_a + psi_b);
        sum += t;
        if t.abs() <= 1e-17 * sum.abs() && n > 2 {
            return Ok(head - sign * g * sum);
        }
        coef *= (a + nf) * (b + nf) / ((nf + 1.0) * (nf + mf + 1.0)) * u;
        psi_n1 += 1.0 / (nf + 1.0);
        psi_nm1 += 1.0 / (nf + mf + 1.0);
        psi_a += 1.0 / (a + nf);
        psi_b += 1.0 / (b + nf);
    }
    Err(Error::NoConvergence { what: "hyp2f1 log case near 1", budget: 500 })
}
