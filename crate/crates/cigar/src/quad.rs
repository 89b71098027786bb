//! Quadrature: adaptive Gauss–Kronrod (21 point) for real and complex
//! integrands, and composite Gauss–Legendre rules.

use num_complex::Complex64 as C64;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// Values that can be integrated: reals and complex numbers.
pub trait Quadrand: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    const ZERO: Self;
    fn magnitude(&self) -> f64;
    fn finite(&self) -> bool;
}

impl Quadrand for f64 {
    const ZERO: Self = 0.0;
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn finite(&self) -> bool {
        self.is_finite()
    }
}

impl Quadrand for C64 {
    const ZERO: Self = C64 { re: 0.0, im: 0.0 };
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_904_845_751_697,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Outcome of a quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T = f64> {
    pub value: T,
    pub error: f64,
    pub evals: usize,
}

/// One Kronrod panel: value, error estimate, and the roundoff floor
/// 50ε∫|f| below which the error estimate cannot be pushed.
#[derive(Debug, Clone, Copy)]
pub struct Panel<T> {
    pub value: T,
    pub error: f64,
    pub floor: f64,
}

#[derive(Debug, Clone, Copy)]
struct Segment<T> {
    a: f64,
    b: f64,
    panel: Panel<T>,
}

impl<T> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.panel.error == other.panel.error
    }
}
impl<T> Eq for Segment<T> {}
impl<T> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.panel.error.total_cmp(&other.panel.error)
    }
}

/// 21-point Kronrod rule with the QUADPACK error heuristic.
pub fn gk21<T, F>(f: &mut F, a: f64, b: f64) -> Result<Panel<T>>
where
    T: Quadrand,
    F: FnMut(f64) -> Result<T>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut resk = fc * WGK[10];
    let mut resg = T::ZERO;
    let mut resabs = fc.magnitude() * WGK[10];
    let mut fv1 = [T::ZERO; 10];
    let mut fv2 = [T::ZERO; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        resk = resk + (f1 + f2) * WGK[j];
        resabs += WGK[j] * (f1.magnitude() + f2.magnitude());
        if j % 2 == 1 {
            resg = resg + (f1 + f2) * WG[j / 2];
        }
    }
    let mean = resk * 0.5;
    let mut resasc = WGK[10] * (fc - mean).magnitude();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - mean).magnitude() + (fv2[j] - mean).magnitude());
    }
    let value = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut err = ((resk - resg) * half).magnitude();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * resabs;
    err = err.max(floor);
    if !value.finite() {
        return Err(Error::NonFinite("quadrature integrand"));
    }
    Ok(Panel { value, error: err, floor })
}

/// Globally adaptive bisection driven by the largest local error. The
/// target is max(abs_tol, rel_tol·|I|), never below twice the accumulated
/// roundoff floor.
pub fn adaptive<T, F>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_segments: usize,
) -> Result<QuadResult<T>>
where
    T: Quadrand,
    F: FnMut(f64) -> Result<T>,
{
    let first = gk21(&mut f, a, b)?;
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, panel: first });
    let mut total = first.value;
    let mut total_err = first.error;
    let mut total_floor = first.floor;
    let mut evals = 21;
    let target = |total: T, floor: f64| abs_tol.max(rel_tol * total.magnitude()).max(2.0 * floor);
    while total_err > target(total, total_floor) {
        if heap.len() >= max_segments {
            return Err(Error::Tolerance { requested: target(total, total_floor), achieved: total_err });
        }
        let seg = heap.pop().expect("non-empty");
        let mid = 0.5 * (seg.a + seg.b);
        if mid <= seg.a || mid >= seg.b {
            heap.push(seg);
            return Err(Error::Tolerance { requested: target(total, total_floor), achieved: total_err });
        }
        let p1 = gk21(&mut f, seg.a, mid)?;
        let p2 = gk21(&mut f, mid, seg.b)?;
        evals += 42;
        total = total + p1.value + p2.value - seg.panel.value;
        total_err += p1.error + p2.error - seg.panel.error;
        total_floor += p1.floor + p2.floor - seg.panel.floor;
        heap.push(Segment { a: seg.a, b: mid, panel: p1 });
        heap.push(Segment { a: mid, b: seg.b, panel: p2 });
    }
    // resum in a fixed order so the result does not depend on heap history
    let mut segs: Vec<Segment<T>> = heap.into_vec();
    segs.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = pairwise_sum(&segs.iter().map(|s| s.panel.value).collect::<Vec<_>>());
    let error = segs.iter().map(|s| s.panel.error).sum();
    Ok(QuadResult { value, error, evals })
}

/// Pairwise summation for reproducible reductions.
pub fn pairwise_sum<T: Quadrand>(xs: &[T]) -> T {
    match xs.len() {
        0 => T::ZERO,
        1 => xs[0],
        n => pairwise_sum(&xs[..n / 2]) + pairwise_sum(&xs[n / 2..]),
    }
}

/// Gauss–Legendre nodes and weights on [−1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else if n == 1 { z } else { p1 };
            let pm1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * p - pm1) / (z * z - 1.0);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Nodes and weights of an n-point Gauss–Legendre rule on each of the given
/// consecutive panels.
pub fn composite_gl(breaks: &[f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let mut nodes = Vec::with_capacity(n * breaks.len());
    let mut weights = Vec::with_capacity(n * breaks.len());
    for p in breaks.windows(2) {
        let c = 0.5 * (p[0] + p[1]);
        let h = 0.5 * (p[1] - p[0]);
        for (xi, wi) in x.iter().zip(&w) {
            nodes.push(c + h * xi);
            weights.push(h * wi);
        }
    }
    (nodes, weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gk_polynomial_exactness() {
        let r = adaptive(|x| Ok(x.powi(7) - 3.0 * x * x), 0.0, 2.0, 1e-14, 1e-14, 50).unwrap();
        assert!((r.value - (256.0 / 8.0 - 8.0)).abs() < 1e-12);
    }

    #[test]
    fn gk_endpoint_singularity() {
        let r = adaptive(|x| Ok(x.sqrt().ln()), 0.0, 1.0, 1e-12, 1e-12, 500).unwrap();
        assert!((r.value + 0.5).abs() < 1e-10);
    }

    #[test]
    fn complex_integrand() {
        // ∫₀^π e^{ix} dx = 2i
        let r = adaptive(|x| Ok(C64::from_polar(1.0, x)), 0.0, std::f64::consts::PI, 1e-14, 0.0, 50).unwrap();
        assert!((r.value - C64::new(0.0, 2.0)).norm() < 1e-13);
    }

    #[test]
    fn gauss_legendre_weights() {
        for n in [1, 2, 5, 10, 20] {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
            let m2: f64 = x.iter().zip(&w).map(|(x, w)| w * x * x).sum();
            if n >= 2 {
                assert!((m2 - 2.0 / 3.0).abs() < 1e-14);
            }
        }
    }
}
