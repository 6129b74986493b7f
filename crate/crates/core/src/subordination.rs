//! The subordination kernel `G(s, t)`, whose Laplace transform in `t` is
//! `g(s, p) = K(p) e^{-sΦ(p)}`, and the growth solution written as
//! `u(t) = ∫₀^∞ e^{λs} G(s, t) ds`.
//!
//! `G` is nonnegative with `∫₀^∞ G(s, t) ds = 1` for every `t`, and
//! `G(0, t) = k(t)`. Each value is one contour inversion.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::contour::{self, Accuracy, Path, Rule};
use crate::error::{Error, Result};
use crate::kernel::KernelSymbol;
use crate::quad;

/// Values of G in `[-NEGATIVE_TOL, 0)` are treated as roundoff.
pub const NEGATIVE_TOL: f64 = 1e-8;
/// Number of points in the default s-grid.
pub const DEFAULT_GRID_POINTS: usize = 200;
/// The default s-grid spans `[GRID_LOW·t*, GRID_HIGH·t*]`.
pub const GRID_LOW: f64 = 1e-4;
pub const GRID_HIGH: f64 = 50.0;

const ABS_TOL: f64 = 1e-14;
const REL_TOL: f64 = 1e-12;
const REACH_CAP: f64 = 1e12;
/// Largest s, in units of t*, that the growth integral may reach.
const S_CAP: f64 = 1e6;
const MAX_TILT_HALVINGS: usize = 30;
/// Largest abscissa, in units of 1/t, used for the saddle.
const SADDLE_CAP: f64 = 1e8;
/// Below this log-size G underflows.
const LOG_UNDERFLOW: f64 = -745.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubordinationSlice {
    pub t: f64,
    pub s_grid: Vec<f64>,
    pub g_values: Vec<f64>,
    /// ∫G ds by the trapezoid rule in log s, plus the segment [0, s₀].
    pub mass: f64,
    pub min_value: f64,
    /// Number of values in `[-NEGATIVE_TOL, 0)` clamped to zero for `mass`.
    pub clamped: usize,
}

fn off_cut(p: Complex64) -> Result<()> {
    if !(p.re.is_finite() && p.im.is_finite()) || (p.im == 0.0 && p.re <= 0.0) {
        return Err(Error::domain("p", format!("{p} is not in the cut plane")));
    }
    Ok(())
}

/// g(s, p) = K(p) e^{-sΦ(p)}, evaluated as one exponential.
pub fn g_hat(symbol: &KernelSymbol, s: f64, p: Complex64) -> Result<Complex64> {
    if !(s >= 0.0 && s.is_finite()) {
        return Err(Error::domain("s", format!("{s} must be nonnegative")));
    }
    off_cut(p)?;
    let k = symbol.laplace_k_unchecked(p);
    if k == Complex64::new(0.0, 0.0) {
        return Ok(k);
    }
    let v = (k.ln() - symbol.phi_unchecked(p) * s).exp();
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { what: "g_hat" })
    }
}

/// The natural s-scale `1/Φ(1/t)`, where `sΦ ~ 1` on the inversion line.
pub fn s_scale(symbol: &KernelSymbol, t: f64) -> Result<f64> {
    let scale = 1.0 / symbol.phi_real(1.0 / t)?;
    if scale.is_finite() {
        Ok(scale)
    } else {
        Err(Error::NonFinite { what: "s scale" })
    }
}

/// Geometric grid of [`DEFAULT_GRID_POINTS`] points on `[1e-4 t*, 50 t*]`.
pub fn default_s_grid(symbol: &KernelSymbol, t: f64) -> Result<Vec<f64>> {
    check_time(t)?;
    let scale = s_scale(symbol, t)?;
    let (lo, hi) = ((GRID_LOW * scale).ln(), (GRID_HIGH * scale).ln());
    let n = DEFAULT_GRID_POINTS;
    Ok((0..n).map(|i| (lo + (hi - lo) * i as f64 / (n - 1) as f64).exp()).collect())
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid("t", format!("{t} must be positive")))
    }
}

/// Tilt of the contour ray. Starts from `min(π/4, atan(πt/(2s)))` and is
/// halved while `Re(pt - sΦ(p))` still grows somewhere along the ray.
fn ray_tilt(symbol: &KernelSymbol, s: f64, t: f64, c: f64, height: f64) -> Result<f64> {
    let exponent = |p: Complex64| (p * t - symbol.phi_unchecked(p) * s).re;
    let corner = Complex64::new(c, height);
    let start = exponent(corner);
    let mut tilt = if s > 0.0 { FRAC_PI_4.min((FRAC_PI_2 * t / s).atan()) } else { FRAC_PI_4 };
    for _ in 0..MAX_TILT_HALVINGS {
        let dir = Complex64::from_polar(1.0, FRAC_PI_2 + tilt);
        let decay_length = 1.0 / (t * tilt.sin());
        let grows = (0..60)
            .map(|k| corner.norm() * 2f64.powi(k))
            .take_while(|rho| *rho < 64.0 * decay_length)
            .any(|rho| exponent(corner + dir * rho) > start + 1.0);
        if !grows {
            return Ok(tilt);
        }
        tilt *= 0.5;
    }
    Err(Error::Quadrature(format!("no decaying ray found for s = {s}, t = {t}")))
}

/// Abscissa for G(s, t): the saddle of `pt - sΦ(p)` on the real axis, or
/// `1/t` when the saddle lies left of it. At the saddle the integrand's
/// size matches G itself, so small values keep their relative accuracy.
fn abscissa(symbol: &KernelSymbol, s: f64, t: f64) -> f64 {
    let low = 1.0 / t;
    let target = t / s;
    let steep = |c: f64| symbol.phi_prime(c).is_ok_and(|d| d > target);
    if s == 0.0 || !steep(low) {
        return low;
    }
    let cap = SADDLE_CAP * low;
    if steep(cap) {
        return cap;
    }
    let (mut a, mut b) = (low.ln(), cap.ln());
    for _ in 0..60 {
        let m = 0.5 * (a + b);
        if steep(m.exp()) {
            a = m;
        } else {
            b = m;
        }
    }
    (0.5 * (a + b)).exp()
}

/// G(s, t) for one pair.
pub fn density(symbol: &KernelSymbol, s: f64, t: f64) -> Result<f64> {
    check_time(t)?;
    if !(s >= 0.0 && s.is_finite()) {
        return Err(Error::invalid("s", format!("{s} must be nonnegative")));
    }
    let c = abscissa(symbol, s, t);
    let phi_c = symbol.phi_real_unchecked(c);
    // log of the integrand's size at the real axis, factored out
    let level = c * t - s * phi_c;
    if level < LOG_UNDERFLOW {
        return Ok(0.0);
    }
    let height = 2.0 * c;
    let tilt = ray_tilt(symbol, s, t, c, height)?;
    let f = |p: Complex64| {
        let k = symbol.laplace_k_unchecked(p);
        ((p - c) * t + k.ln() - (symbol.phi_unchecked(p) - phi_c) * s).exp()
    };
    let path = Path { abscissa: c, height, tilt, reach_cap: REACH_CAP * c.max(1.0) };
    let factor = level.exp() / PI;
    let acc =
        Accuracy { rule: Rule::GaussSegments, nodes: 64, abs_tol: ABS_TOL.min(ABS_TOL / factor), rel_tol: REL_TOL };
    let v = contour::upper_integral(f, &path, &acc, t)?.im * factor;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { what: "subordination density" })
    }
}

/// Inverts g(s, ·) at each grid point and checks mass and sign.
pub fn subordination_kernel(symbol: &KernelSymbol, t: f64, s_grid: &[f64]) -> Result<SubordinationSlice> {
    check_time(t)?;
    if s_grid.len() < 2 {
        return Err(Error::invalid("s_grid", "needs at least two points"));
    }
    if s_grid[0] < 0.0 || s_grid.windows(2).any(|w| !(w[1] > w[0])) || !s_grid[s_grid.len() - 1].is_finite() {
        return Err(Error::invalid("s_grid", "must be nonnegative and strictly increasing"));
    }
    let g_values = s_grid.par_iter().map(|&s| density(symbol, s, t)).collect::<Result<Vec<_>>>()?;
    let min_value = g_values.iter().copied().fold(f64::INFINITY, f64::min);
    if min_value < -NEGATIVE_TOL {
        let at = g_values.iter().position(|&g| g == min_value).expect("minimum is present");
        return Err(Error::PrecisionLoss(format!("G({}, {t}) = {min_value:e} is below -{NEGATIVE_TOL:e}", s_grid[at])));
    }
    let clamped = g_values.iter().filter(|&&g| g < 0.0).count();
    let g: Vec<f64> = g_values.iter().map(|&v| v.max(0.0)).collect();

    // [0, s₀] from G(0, t) = k(t)
    let mut mass = if s_grid[0] > 0.0 { 0.5 * s_grid[0] * (symbol.kernel_k(t)? + g[0]) } else { 0.0 };
    for i in 0..s_grid.len() - 1 {
        let (a, b) = (s_grid[i], s_grid[i + 1]);
        mass +=
            if a > 0.0 { 0.5 * (b / a).ln() * (a * g[i] + b * g[i + 1]) } else { 0.5 * (b - a) * (g[i] + g[i + 1]) };
    }
    Ok(SubordinationSlice { t, s_grid: s_grid.to_vec(), g_values, mass, min_value, clamped })
}

/// u(t) = ∫₀^∞ e^{λs} G(s, t) ds, on panels of doubling length in s.
pub fn growth_via_subordination(symbol: &KernelSymbol, lambda: f64, t: f64) -> Result<f64> {
    check_time(t)?;
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::invalid("lambda", format!("{lambda} must be positive")));
    }
    let scale = s_scale(symbol, t)?;
    // a failed inversion inside the quadrature is carried out as NaN
    let f = |s: f64| density(symbol, s, t).map_or(f64::NAN, |g| (lambda * s).exp() * g);
    let est = quad::to_infinity(f, 0.0, scale, 0.0, 1e-10, S_CAP * scale).map_err(|e| match e {
        Error::NonFinite { .. } => Error::Quadrature(format!("G(s, {t}) could not be inverted on the s-range")),
        other => other,
    })?;
    Ok(est.value)
}
