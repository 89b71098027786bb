//! Special functions and the spectral building blocks a(s), f(s,y), w(s,y).

mod gamma;
mod hyp;
mod legendre;

pub use gamma::{
    digamma, gamma, is_nonpositive_integer, ln_gamma, ln_gamma_half_shift, rgamma, GammaRatio,
};
pub use hyp::{hyp2f1, hyp2f1_deriv, hyp2f1_eval, HypergeoEval, HypergeoMethod, DEFAULT_TOL};
pub use legendre::{legendre_halforder, legendre_q_coth, LegendreKind};

use num_complex::Complex64 as C64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

pub(crate) const I: C64 = C64 { re: 0.0, im: 1.0 };

pub(crate) fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub(crate) fn check_height(y: f64, what: &str) -> Result<()> {
    if y > 0.0 && y.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} requires a positive height, got {y}")))
    }
}

/// Principal branch α(λ) = √(¼ − λ) with arg(¼ − λ) ∈ [−π, π).
///
/// On the cut λ > ¼ this gives α = −i√(λ − ¼).
pub fn alpha_of_lambda(lambda: C64) -> C64 {
    let d = c(0.25) - lambda;
    let mut phi = d.im.atan2(d.re);
    if phi >= PI {
        phi = -PI;
    }
    C64::from_polar(d.norm().sqrt(), 0.5 * phi)
}

/// a(λ) = −Γ(1+α)Γ(3/2−α) / (Γ(1−α)Γ(3/2+α)) as a function of α = α(λ).
pub fn a_of_alpha(alpha: C64) -> Result<C64> {
    let g = GammaRatio::new(&[1.0 + alpha, 1.5 - alpha], &[1.0 - alpha, 1.5 + alpha])?;
    Ok(-g.value)
}

fn log_ratio_phase(s: f64) -> f64 {
    // Im[log Γ(3/2 + is) − log Γ(1 + is)]
    ln_gamma_half_shift(C64::new(1.0, s)).expect("regular for real s").im
}

/// a(s) = −Γ(1−is)Γ(3/2+is) / (Γ(1+is)Γ(3/2−is)).
///
/// The log-gamma terms pair into conjugates, so a(s) = −exp(2iθ(s)) with
/// θ(s) = Im[log Γ(3/2+is) − log Γ(1+is)].
pub fn a_coefficient(s: f64) -> C64 {
    if s == 0.0 {
        return c(-1.0);
    }
    -C64::from_polar(1.0, 2.0 * log_ratio_phase(s))
}

/// R(s) = Γ(3/2+is)/Γ(is), written as is·Γ(3/2+is)/Γ(1+is) so s = 0 is regular.
pub fn spectral_ratio(s: f64) -> C64 {
    if s == 0.0 {
        return c(0.0);
    }
    I * s * ln_gamma_half_shift(C64::new(1.0, s)).expect("regular for real s").exp()
}

/// |R(s)|² = s(s²+¼)tanh(πs).
pub fn spectral_ratio_norm_sqr(s: f64) -> f64 {
    s * (s * s + 0.25) * (PI * s).tanh()
}

/// R(s)/|R(s)|; the right limit i at s = 0.
pub fn spectral_phase(s: f64) -> C64 {
    let sign = if s < 0.0 { -1.0 } else { 1.0 };
    I * sign * C64::from_polar(1.0, log_ratio_phase(s))
}

/// f(s, y) = ₂F₁(−½, −½+is; 1+is; e^{−2y}).
pub fn f_hypergeo(s: f64, y: f64) -> Result<C64> {
    check_height(y, "f_hypergeo")?;
    hyp2f1(c(-0.5), C64::new(-0.5, s), C64::new(1.0, s), (-2.0 * y).exp())
}

/// w(s, y) = e^{(1−is)y}(e^{2y}−1)^{−½} f(s, y).
pub fn w_solution(s: f64, y: f64) -> Result<C64> {
    let f = f_hypergeo(s, y)?;
    Ok(C64::from_polar(1.0, -s * y) * f / (-(-2.0 * y).exp_m1()).sqrt())
}

/// log cosh y without overflow.
pub(crate) fn ln_cosh(y: f64) -> f64 {
    let y = y.abs();
    y + (-2.0 * y).exp().ln_1p() - std::f64::consts::LN_2
}

/// The three pieces of the connection identity between the two w-type
/// hypergeometric solutions:
///
/// e^{zy}F(−½,−½−z;1−z;e^{−2y})/(Γ(1−z)Γ(3/2+z))
///   − e^{−zy}F(−½,−½+z;1+z;e^{−2y})/(Γ(1+z)Γ(3/2−z))
///   = √(1−e^{−2y})/√(2π)·cosh^{−z}y·tanh^{3/2}y·sin(πz)·F(z/2+5/4, z/2+3/4; 2; tanh²y).
///
/// Returns (first term, second term, right side).
pub fn connection_identity(z: C64, y: f64) -> Result<(C64, C64, C64)> {
    check_height(y, "connection_identity")?;
    let x = (-2.0 * y).exp();
    let t1 = (z * y).exp()
        * rgamma(1.0 - z)?
        * rgamma(1.5 + z)?
        * hyp2f1(c(-0.5), -0.5 - z, 1.0 - z, x)?;
    let t2 = (-z * y).exp()
        * rgamma(1.0 + z)?
        * rgamma(1.5 - z)?
        * hyp2f1(c(-0.5), -0.5 + z, 1.0 + z, x)?;
    let th = y.tanh();
    let rhs = (-(-2.0 * y).exp_m1()).sqrt() / (2.0 * PI).sqrt()
        * (-z * ln_cosh(y)).exp()
        * th.powf(1.5)
        * (z * PI).sin()
        * hyp2f1(0.5 * z + 1.25, 0.5 * z + 0.75, c(2.0), th * th)?;
    Ok((t1, t2, rhs))
}

/// Exact and large-|z| forms of Γ(1+z)Γ(3/2−z)/(Γ(1−z)Γ(3/2+z)); the
/// asymptotic form is (1−4z²)/(4z²)·(1 − 3/(8z))²·tan(πz).
pub fn gamma_ratio_expansion(z: C64) -> Result<(C64, C64)> {
    let exact = GammaRatio::new(&[1.0 + z, 1.5 - z], &[1.0 - z, 1.5 + z])?.value;
    let corr = 1.0 - 3.0 / (8.0 * z);
    let asym = (1.0 - 4.0 * z * z) / (4.0 * z * z) * corr * corr * (PI * z).tan();
    Ok((exact, asym))
}

/// Exact and large-|z| forms of ₂F₁(−½, −½+z; 1+z; e^{−2y}); the asymptotic
/// form is √(1−e^{−2y})·(1 − 3/(4(1+z)(1−e^{2y}))).
pub fn f_expansion(z: C64, y: f64) -> Result<(C64, C64)> {
    check_height(y, "f_expansion")?;
    let exact = hyp2f1(c(-0.5), -0.5 + z, 1.0 + z, (-2.0 * y).exp())?;
    let root = (-(-2.0 * y).exp_m1()).sqrt();
    let asym = root * (1.0 + 3.0 / (4.0 * (1.0 + z) * (2.0 * y).exp_m1()));
    Ok((exact, asym))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_is_unimodular_and_conjugate_odd() {
        for s in [0.0, 0.7, 3.0, 17.0, 50.0] {
            assert!((a_coefficient(s).norm() - 1.0).abs() < 1e-15);
        }
        assert_eq!(a_coefficient(-2.0), a_coefficient(2.0).conj());
        assert_eq!(a_coefficient(0.0), c(-1.0));
    }

    #[test]
    fn a_matches_general_gamma_route() {
        for s in [0.3, 2.0, 11.0] {
            let gen = a_of_alpha(C64::new(0.0, -s)).unwrap();
            assert!((gen - a_coefficient(s)).norm() < 1e-13);
        }
    }

    #[test]
    fn alpha_branch() {
        let a = alpha_of_lambda(c(1.25));
        assert!((a - C64::new(0.0, -1.0)).norm() < 1e-15);
        let a = alpha_of_lambda(c(-2.0));
        assert!((a - c(1.5)).norm() < 1e-15);
    }

    #[test]
    fn spectral_ratio_modulus() {
        for s in [0.01, 1.0, 9.0] {
            let r = spectral_ratio(s);
            assert!((r.norm_sqr() / spectral_ratio_norm_sqr(s) - 1.0).abs() < 1e-13);
            assert!((r / r.norm() - spectral_phase(s)).norm() < 1e-14);
        }
    }

    #[test]
    fn w_far_out_is_a_pure_phase() {
        let w = w_solution(1.0, 40.0).unwrap();
        assert!((w - C64::from_polar(1.0, -40.0)).norm() < 1e-15);
    }
}
