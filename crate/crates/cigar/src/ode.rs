//! Dormand–Prince 5(4) with standard step-size control.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeConfig {
    pub rtol: f64,
    pub atol: f64,
    pub h_init: f64,
    pub h_max: f64,
    pub max_steps: usize,
}

impl Default for OdeConfig {
    fn default() -> Self {
        Self { rtol: 1e-10, atol: 1e-12, h_init: 1e-3, h_max: 0.5, max_steps: 200_000 }
    }
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// fifth minus fourth order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn lin<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for i in 0..N {
        let mut acc = 0.0;
        for (c, k) in terms {
            acc += c * k[i];
        }
        out[i] += h * acc;
    }
    out
}

/// Integrates u′ = f(t, u) from t0 to t1 and returns every accepted state,
/// starting with (t0, u0). `admissible` rejects trial states outside the
/// domain (the step is then shrunk).
pub fn integrate<const N: usize, F, V>(
    mut f: F,
    u0: [f64; N],
    t0: f64,
    t1: f64,
    cfg: &OdeConfig,
    admissible: V,
) -> Result<Vec<(f64, [f64; N])>>
where
    F: FnMut(f64, &[f64; N]) -> Result<[f64; N]>,
    V: Fn(&[f64; N]) -> bool,
{
    let mut t = t0;
    let mut u = u0;
    let mut out = vec![(t, u)];
    let mut h = cfg.h_init.min(cfg.h_max).min((t1 - t0).abs());
    let mut k1 = f(t, &u)?;
    let mut steps = 0;
    while t < t1 {
        steps += 1;
        if steps > cfg.max_steps {
            return Err(Error::Step { t, reason: format!("step budget {} exhausted", cfg.max_steps) });
        }
        if h < 1e-14 * t.abs().max(1.0) {
            return Err(Error::Step { t, reason: "step size underflow".into() });
        }
        h = h.min(t1 - t);
        let trial = (|| -> Result<Option<([f64; N], [f64; N], f64)>> {
            let s2 = lin(&u, h, &[(A21, &k1)]);
            if !admissible(&s2) {
                return Ok(None);
            }
            let k2 = f(t + C2 * h, &s2)?;
            let s3 = lin(&u, h, &[(A31, &k1), (A32, &k2)]);
            if !admissible(&s3) {
                return Ok(None);
            }
            let k3 = f(t + C3 * h, &s3)?;
            let s4 = lin(&u, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]);
            if !admissible(&s4) {
                return Ok(None);
            }
            let k4 = f(t + C4 * h, &s4)?;
            let s5 = lin(&u, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]);
            if !admissible(&s5) {
                return Ok(None);
            }
            let k5 = f(t + C5 * h, &s5)?;
            let s6 = lin(&u, h, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]);
            if !admissible(&s6) {
                return Ok(None);
            }
            let k6 = f(t + h, &s6)?;
            let next = lin(&u, h, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
            if !admissible(&next) {
                return Ok(None);
            }
            let k7 = f(t + h, &next)?;
            let mut err = 0.0_f64;
            for i in 0..N {
                let e = h
                    * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
                let sc = cfg.atol + cfg.rtol * u[i].abs().max(next[i].abs());
                err = err.max((e / sc).abs());
            }
            Ok(Some((next, k7, err)))
        })()?;
        match trial {
            None => h *= 0.25,
            Some((next, k7, err)) => {
                if err <= 1.0 {
                    t += h;
                    u = next;
                    k1 = k7;
                    out.push((t, u));
                }
                let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                h = (h * factor).min(cfg.h_max);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator() {
        let cfg = OdeConfig::default();
        let path = integrate(|_, u: &[f64; 2]| Ok([u[1], -u[0]]), [1.0, 0.0], 0.0, 10.0, &cfg, |_| true).unwrap();
        let (t, u) = path.last().unwrap();
        assert_eq!(*t, 10.0);
        assert!((u[0] - 10f64.cos()).abs() < 1e-8);
    }
}
