//! Gauss hypergeometric function ₂F₁(a, b; c; x) for complex parameters and
//! real argument x ≤ 1.
//!
//! Strategy:
//! * terminating parameters: finite sum;
//! * x = 1: Gauss summation;
//! * small |x| (relative to the parameter size): the defining series;
//! * |x| ≤ 0.9 when the series shows no cancellation: the series again;
//! * otherwise: start from the series at a small base point and continue
//!   along the real axis with Taylor steps of the hypergeometric ODE. Each
//!   step stays inside half the distance to the singular points 0 and 1.
//!
//! Forward continuation is ill-conditioned only when the wanted solution is
//! recessive at −∞ (Re b < Re a for the behaviours z^{−a}, z^{−b}); none of
//! the families used in this crate are of that kind.
//!
//! The Taylor coefficients are recurred in scaled form u_n = w_n hⁿ so that
//! long steps never overflow.

use num_complex::Complex64 as C64;
use serde::Serialize;

use super::gamma::{is_nonpositive_integer, GammaRatio};
use crate::error::{Error, Result};

/// Default relative truncation tolerance.
pub const DEFAULT_TOL: f64 = 1e-16;
const MAX_TERMS: usize = 100_000;
const MAX_TAYLOR_TERMS: usize = 20_000;
const MAX_STEPS: usize = 100_000;
const EPS: f64 = f64::EPSILON;
// Largest cancellation (max |term| / |sum|) accepted from the plain series.
const SERIES_CANCELLATION: f64 = 16.0;
// Largest |x| at which the plain series is tried before continuing.
const SERIES_REACH: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HypergeoMethod {
    Unit,
    Terminating,
    Series,
    GaussSum,
    Continuation { steps: usize },
}

/// A ₂F₁ value together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypergeoEval {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub argument: f64,
    pub value: C64,
    /// Truncation estimate plus accumulated rounding amplification.
    pub est_error: f64,
    pub method: HypergeoMethod,
}

/// ₂F₁(a, b; c; x) at the default tolerance.
pub fn hyp2f1(a: C64, b: C64, c: C64, x: f64) -> Result<C64> {
    hyp2f1_eval(a, b, c, x, DEFAULT_TOL).map(|e| e.value)
}

fn degree(z: C64) -> Option<u64> {
    is_nonpositive_integer(z).then(|| (-z.re) as u64)
}

fn finite(z: C64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

pub fn hyp2f1_eval(a: C64, b: C64, c: C64, x: f64, tol: f64) -> Result<HypergeoEval> {
    if !(finite(a) && finite(b) && finite(c) && x.is_finite()) {
        return Err(Error::NonFinite("hyp2f1 input"));
    }
    if x > 1.0 {
        return Err(Error::Domain(format!("hyp2f1 argument {x} > 1")));
    }
    let tol = tol.max(EPS * 0.25);
    let out = |value: C64, est_error: f64, method| HypergeoEval {
        a,
        b,
        c,
        argument: x,
        value,
        est_error,
        method,
    };
    if x == 0.0 {
        return Ok(out(C64::new(1.0, 0.0), 0.0, HypergeoMethod::Unit));
    }
    let n_poly = match (degree(a), degree(b)) {
        (Some(p), Some(q)) => Some(p.min(q)),
        (p, q) => p.or(q),
    };
    if let Some(k) = degree(c) {
        if n_poly.is_none_or(|n| n > k) {
            return Err(Error::Domain(format!(
                "hyp2f1 parameter c = {} is a pole",
                c.re
            )));
        }
    }
    if let Some(n) = n_poly {
        let (value, scale) = polynomial(a, b, c, x, n);
        return Ok(out(value, 4.0 * EPS * scale, HypergeoMethod::Terminating));
    }
    if x == 1.0 {
        if (c - a - b).re <= 0.0 {
            return Err(Error::Domain(
                "hyp2f1 at x = 1 requires Re(c - a - b) > 0".into(),
            ));
        }
        let g = GammaRatio::new(&[c, c - a - b], &[c - a, c - b])?;
        let err = 1e-14 * g.value.norm();
        return Ok(out(g.value, err, HypergeoMethod::GaussSum));
    }

    let base = base_radius(a, b, c);
    if x.abs() <= base {
        let s = series(a, b, c, x, tol)?;
        return Ok(out(s.value, s.error(tol), HypergeoMethod::Series));
    }
    if x.abs() <= SERIES_REACH {
        if let Ok(s) = series(a, b, c, x, tol) {
            if s.cancellation() <= SERIES_CANCELLATION {
                return Ok(out(s.value, s.error(tol), HypergeoMethod::Series));
            }
        }
    }
    let (value, err, steps) = continuation(a, b, c, x, start_point(a, b, c, x, base, tol), tol)?;
    Ok(out(value, err, HypergeoMethod::Continuation { steps }))
}

/// Where the Taylor march begins. The companion solution x^{1−c} grows like
/// (x/x0)^{Re(1−c)} along the march, so for Re c ≪ 0 start as far out as the
/// series still sums cleanly.
fn start_point(a: C64, b: C64, c: C64, x: f64, base: f64, tol: f64) -> f64 {
    if (1.0 - c).re > 1.0 {
        let mut r = x.abs().min(SERIES_REACH);
        while r > base {
            if series(a, b, c, r.copysign(x), tol).is_ok_and(|s| s.cancellation() <= SERIES_CANCELLATION) {
                return r.copysign(x);
            }
            r *= 0.5;
        }
    }
    base.copysign(x)
}

/// Radius below which the plain series is free of significant cancellation.
fn base_radius(a: C64, b: C64, c: C64) -> f64 {
    let m = a.norm().max(b.norm()).max(c.norm()).max(1.0);
    (2.0 / m).powi(2).min(0.5)
}

fn polynomial(a: C64, b: C64, c: C64, x: f64, n: u64) -> (C64, f64) {
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    let mut scale = 1.0_f64;
    for k in 0..n {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * x;
        sum += term;
        scale = scale.max(term.norm());
    }
    (sum, scale * (n as f64 + 1.0))
}

struct SeriesSum {
    value: C64,
    max_term: f64,
    last: f64,
}

impl SeriesSum {
    fn cancellation(&self) -> f64 {
        self.max_term / self.value.norm().max(f64::MIN_POSITIVE)
    }
    fn error(&self, tol: f64) -> f64 {
        self.last + (tol + 4.0 * EPS * self.cancellation()) * self.value.norm()
    }
}

fn series(a: C64, b: C64, c: C64, x: f64, tol: f64) -> Result<SeriesSum> {
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    let mut max_term = 1.0_f64;
    let mut small = 0;
    // the term ratio tends to x; stop only once it is safely below 1
    let settle = 0.5 * (1.0 + x.abs());
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let ratio = (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * x;
        term *= ratio;
        sum += term;
        let t = term.norm();
        max_term = max_term.max(t);
        if t <= tol * sum.norm() && ratio.norm() < settle {
            small += 1;
            if small >= 3 {
                return Ok(SeriesSum {
                    value: sum,
                    max_term,
                    last: t,
                });
            }
        } else {
            small = 0;
        }
        if !finite(sum) {
            return Err(Error::NonFinite("hyp2f1 series"));
        }
    }
    Err(Error::NoConvergence {
        what: "hyp2f1 series",
        budget: MAX_TERMS,
    })
}

/// One Taylor step of z(1−z)w″ + [c − (a+b+1)z]w′ − ab w = 0 from z0 to z0+h.
/// Returns (w, w′, cancellation) at the new point.
fn taylor_step(
    a: C64,
    b: C64,
    c: C64,
    z0: f64,
    h: f64,
    w: C64,
    dw: C64,
    tol: f64,
) -> Result<(C64, C64, f64)> {
    let big_a = z0 * (1.0 - z0);
    let big_b = c - (a + b + 1.0) * z0;
    let big_c = 1.0 - 2.0 * z0;
    let mut u_prev = w;
    let mut u_cur = dw * h;
    let mut val = u_prev + u_cur;
    let mut dval = u_cur;
    let mut max_term = u_prev.norm().max(u_cur.norm());
    let mut small = 0;
    for n in 0..MAX_TAYLOR_TERMS {
        let nf = n as f64;
        let next = ((nf + a) * (nf + b) * (h * h) * u_prev
            - (nf + 1.0) * (big_c * nf + big_b) * h * u_cur)
            / (big_a * (nf + 1.0) * (nf + 2.0));
        val += next;
        dval += next * (nf + 2.0);
        let t = next.norm();
        max_term = max_term.max(t);
        let scale = val.norm() + dval.norm();
        if t * (nf + 3.0) <= tol * scale {
            small += 1;
            if small >= 3 {
                let cancel = max_term / val.norm().max(f64::MIN_POSITIVE);
                return Ok((val, dval / h, cancel));
            }
        } else {
            small = 0;
        }
        if !finite(val) || !finite(dval) {
            return Err(Error::NonFinite("hyp2f1 continuation"));
        }
        u_prev = u_cur;
        u_cur = next;
    }
    Err(Error::NoConvergence {
        what: "hyp2f1 Taylor step",
        budget: MAX_TAYLOR_TERMS,
    })
}

fn continuation(a: C64, b: C64, c: C64, x: f64, x0: f64, tol: f64) -> Result<(C64, f64, usize)> {
    let f0 = series(a, b, c, x0, tol)?;
    let f1 = series(a + 1.0, b + 1.0, c + 1.0, x0, tol)?;
    let mut w = f0.value;
    let mut dw = a * b / c * f1.value;
    let mut rel_err = tol + 4.0 * EPS * f0.cancellation().max(f1.cancellation());
    let mut z = x0;
    let mut steps = 0;
    while z != x {
        let reach = 0.5 * z.abs().min((1.0 - z).abs());
        let rem = x - z;
        let h = if rem.abs() <= reach { rem } else { reach.copysign(rem) };
        let (nw, ndw, cancel) = taylor_step(a, b, c, z, h, w, dw, tol)?;
        w = nw;
        dw = ndw;
        rel_err += tol + EPS * cancel;
        z = if rem.abs() <= reach { x } else { z + h };
        steps += 1;
        if steps > MAX_STEPS {
            return Err(Error::NoConvergence {
                what: "hyp2f1 continuation",
                budget: MAX_STEPS,
            });
        }
    }
    Ok((w, rel_err * w.norm(), steps))
}

/// dF/dx = ab/c · ₂F₁(a+1, b+1; c+1; x).
pub fn hyp2f1_deriv(a: C64, b: C64, c: C64, x: f64) -> Result<C64> {
    Ok(a * b / c * hyp2f1(a + 1.0, b + 1.0, c + 1.0, x)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn elementary_closed_forms() {
        // F(1,1;2;x) = -ln(1-x)/x
        for x in [-0.75, -20.0, 0.3, 0.9, 0.999] {
            let v = hyp2f1(r(1.0), r(1.0), r(2.0), x).unwrap().re;
            let exact = -(1.0 - x).ln() / x;
            assert!((v / exact - 1.0).abs() < 1e-14, "x = {x}: {v} vs {exact}");
        }
        // F(a,b;b;x) = (1-x)^{-a}
        let a = C64::new(0.3, 1.7);
        let b = C64::new(0.5, 0.4);
        for x in [-50.0, -0.4, 0.6, 0.97] {
            let v = hyp2f1(a, b, b, x).unwrap();
            let exact = (-a * (1.0 - x).ln()).exp();
            assert!((v - exact).norm() / exact.norm() < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn terminating_and_gauss() {
        let v = hyp2f1(r(-0.5), r(-2.0), r(-0.5), 1.0).unwrap();
        assert!(v.norm() < 1e-15);
        let e = hyp2f1_eval(r(1.0), r(-3.0), r(2.0), 0.5, DEFAULT_TOL).unwrap();
        assert_eq!(e.method, HypergeoMethod::Terminating);
        // 1 - 3/4 + 1/4 - 1/32
        assert!((e.value.re - 0.46875).abs() < 1e-15);
        assert!(hyp2f1(r(1.0), r(1.0), r(1.5), 1.0).is_err());
    }

    #[test]
    fn pole_in_c() {
        assert!(hyp2f1(r(0.5), r(0.5), r(-2.0), 0.3).is_err());
        assert!(hyp2f1(r(-1.0), r(0.5), r(-2.0), 0.3).is_ok());
    }
}
