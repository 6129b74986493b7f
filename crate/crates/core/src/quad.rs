//! Quadrature rules: Gauss–Legendre nodes and a globally adaptive
//! Gauss–Kronrod (7, 15) integrator for real or complex integrands.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Values that the adaptive integrator can accumulate.
pub trait Integrand: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl Integrand for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Integrand for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on [-1, 1],
/// computed by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss–Legendre rule mapped onto [a, b].
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    x.iter().zip(&w).map(|(&xi, &wi)| (mid + half * xi, half * wi)).collect()
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_3,
    0.949_107_912_342_758_524_526_189_684_047_9,
    0.864_864_423_359_769_072_789_712_788_640_9,
    0.741_531_185_599_394_439_863_864_773_280_8,
    0.586_087_235_467_691_130_294_144_845_693_0,
    0.405_845_151_377_397_166_906_606_412_076_96,
    0.207_784_955_007_898_467_600_689_403_773_24,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_97,
    0.063_092_092_629_978_553_290_700_663_189_2,
    0.104_790_010_322_250_183_839_876_322_541_5,
    0.140_653_259_715_525_918_745_189_590_510_2,
    0.169_004_726_639_267_902_826_583_426_598_6,
    0.190_350_578_064_785_409_913_256_402_421_0,
    0.204_432_940_075_298_892_414_161_999_234_6,
    0.209_482_141_084_727_828_012_999_174_891_7,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_1,
    0.279_705_391_489_276_667_901_467_771_423_8,
    0.381_830_050_505_118_944_950_369_775_488_98,
    0.417_959_183_673_469_387_755_102_040_816_3,
];

/// One Gauss–Kronrod 7–15 panel: the Kronrod estimate, |K - G|, and the
/// Kronrod estimate of ∫|f| (used as a roundoff scale).
pub fn gk15<V: Integrand, F: Fn(f64) -> V>(f: &F, a: f64, b: f64) -> (V, f64, f64) {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let fc = f(mid);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut absolute = fc.magnitude() * WGK[7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let (lo, hi) = (f(mid - dx), f(mid + dx));
        kronrod = kronrod + (lo + hi) * WGK[j];
        absolute += (lo.magnitude() + hi.magnitude()) * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + (lo + hi) * WG[j / 2];
        }
    }
    let k = kronrod * half;
    let g = gauss * half;
    (k, (k - g).magnitude(), absolute * half.abs())
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Estimate<V> {
    pub value: V,
    pub error: f64,
    /// Estimate of the integral of |f|.
    pub absolute: f64,
    pub evaluations: usize,
}

const MAX_PANELS: usize = 4000;
// error below this multiple of ε·∫|f| is roundoff and is accepted
const ROUNDOFF_FACTOR: f64 = 50.0;

/// Globally adaptive GK15: bisects the panel with the largest error until
/// the summed error is at most `max(abs_tol, rel_tol·|I|)`, or is at the
/// roundoff level of `∫|f|`.
pub fn adaptive<V: Integrand, F: Fn(f64) -> V>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<Estimate<V>> {
    adaptive_on(f, &[a, b], abs_tol, rel_tol)
}

/// [`adaptive`] over consecutive panels `breaks[i]..breaks[i+1]`.
pub fn adaptive_on<V: Integrand, F: Fn(f64) -> V>(
    f: F,
    breaks: &[f64],
    abs_tol: f64,
    rel_tol: f64,
) -> Result<Estimate<V>> {
    let mut panels = Vec::with_capacity(breaks.len());
    for w in breaks.windows(2) {
        if w[0] != w[1] {
            let (v, e, r) = gk15(&f, w[0], w[1]);
            panels.push((w[0], w[1], v, e, r));
        }
    }
    let (a, b) = (breaks[0], breaks[breaks.len() - 1]);
    let mut evaluations = 15 * panels.len();
    loop {
        let total = panels.iter().fold(V::zero(), |acc, p| acc + p.2);
        let error: f64 = panels.iter().map(|p| p.3).sum();
        let absolute: f64 = panels.iter().map(|p| p.4).sum();
        if !error.is_finite() || !total.magnitude().is_finite() {
            return Err(Error::NonFinite { what: "adaptive quadrature" });
        }
        let target = abs_tol.max(rel_tol * total.magnitude());
        let floor = ROUNDOFF_FACTOR * f64::EPSILON * absolute;
        if error <= target.max(floor) {
            return Ok(Estimate { value: total, error, absolute, evaluations });
        }
        if panels.len() >= MAX_PANELS {
            return Err(Error::Quadrature(format!(
                "error {error:e} above target {target:e} after {MAX_PANELS} panels on [{a}, {b}]"
            )));
        }
        let (worst, _) =
            panels.iter().enumerate().max_by(|x, y| x.1 .3.total_cmp(&y.1 .3)).expect("non-empty panel list");
        let (lo, hi, _, _, _) = panels.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if mid <= lo.min(hi) || mid >= lo.max(hi) {
            // panel is at floating-point resolution; accept what we have
            return Ok(Estimate { value: total, error, absolute, evaluations });
        }
        let (lv, le, lr) = gk15(&f, lo, mid);
        let (rv, re, rr) = gk15(&f, mid, hi);
        evaluations += 30;
        panels.push((lo, mid, lv, le, lr));
        panels.push((mid, hi, rv, re, rr));
    }
}

/// ∫_a^∞ f over panels of doubling length starting at `first_panel`.
/// Stops once two consecutive panels each have ∫|f| less than
/// `max(abs_tol, rel_tol·|I|)`; fails if the panels pass `reach_cap`.
pub fn to_infinity<V: Integrand, F: Fn(f64) -> V>(
    f: F,
    a: f64,
    first_panel: f64,
    abs_tol: f64,
    rel_tol: f64,
    reach_cap: f64,
) -> Result<Estimate<V>> {
    let mut lo = a;
    let mut width = first_panel;
    let mut total = V::zero();
    let mut error = 0.0;
    let mut absolute = 0.0;
    let mut evaluations = 0;
    let mut quiet = 0;
    loop {
        let hi = lo + width;
        let panel_tol = 0.1 * abs_tol.max(rel_tol * total.magnitude());
        let est = adaptive(&f, lo, hi, panel_tol, rel_tol * 0.1)?;
        total = total + est.value;
        error += est.error;
        absolute += est.absolute;
        evaluations += est.evaluations;
        // ∫|f| rather than the value, so cancellation inside a panel is not mistaken for decay
        let small = est.absolute <= abs_tol.max(rel_tol * total.magnitude());
        quiet = if small { quiet + 1 } else { 0 };
        if quiet >= 2 {
            return Ok(Estimate { value: total, error, absolute, evaluations });
        }
        lo = hi;
        width *= 2.0;
        if lo - a > reach_cap {
            return Err(Error::NonConvergentTail { reached: lo });
        }
    }
}
