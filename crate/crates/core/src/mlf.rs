//! Reference values of the Mittag-Leffler function
//! `E_α(z) = Σ_{k≥0} z^k / Γ(αk + 1)` for real `z` and `0 < α ≤ 1`.
//!
//! `E_α(λ t^α)` solves the growth equation for the power-law kernel and
//! `E_α(-λ t^α)` the relaxation equation, so this module is the oracle for
//! the contour, subordination and time-stepping solvers.
//!
//! Regimes:
//! * `α = 1` and `α = 1/2` use `e^z` and `e^{z²} erfc(-z)`;
//! * `|z| ≤ cutoff`: the Taylor series, summed until the terms stagnate below
//!   machine precision;
//! * `z > cutoff`: `(1/α) e^{z^{1/α}}` plus the algebraic part
//!   `-Σ_{k=1}^{K} z^{-k}/Γ(1-αk)`;
//! * `z < -cutoff`: the algebraic part alone.
//!
//! The algebraic series is divergent. When its first omitted term is not
//! negligible, the algebraic part is evaluated instead from its exact
//! integral form (the Hankel contour collapsed onto the negative axis):
//!
//! ```text
//! -(z sin πα)/(απ) ∫₀^∞ e^{-x^{1/α}} / (x² - 2xz cos πα + z²) dx.
//! ```
//!
//! The same integral replaces the Taylor series for negative `z` when the
//! series would cancel catastrophically.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad;
use crate::special::{erfcx, ln_gamma, rgamma};

/// Relative disagreement between regimes that is reported as precision loss.
pub const OVERLAP_TOL: f64 = 1e-9;
/// Half-width of the overlap window, as a fraction of the cutoff.
const OVERLAP_FRACTION: f64 = 0.2;
/// Largest tolerated ratio of the largest series term to the sum.
const SERIES_CONDITION_LIMIT: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MLParams {
    pub alpha: f64,
    /// |z| at which the Taylor series gives way to the asymptotic form.
    pub series_cutoff: f64,
    /// Number of algebraic terms in the asymptotic form.
    pub asymptotic_terms: usize,
}

impl MLParams {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::invalid("alpha", format!("{alpha} is not in (0, 1]")));
        }
        Ok(MLParams { alpha, series_cutoff: 5.0, asymptotic_terms: 10 })
    }
}

/// Taylor series value and its condition number (largest term / |sum|).
pub fn series(alpha: f64, z: f64) -> (f64, f64) {
    if z == 0.0 {
        return (1.0, 1.0);
    }
    let lz = z.abs().ln();
    let negative = z < 0.0;
    let mut sum = 1.0;
    let mut largest: f64 = 1.0;
    let mut previous = 1.0f64;
    let mut k = 1u32;
    loop {
        let kf = f64::from(k);
        let magnitude = (kf * lz - ln_gamma(alpha * kf + 1.0)).exp();
        let term = if negative && k % 2 == 1 { -magnitude } else { magnitude };
        sum += term;
        largest = largest.max(magnitude);
        // stop once past the peak and below rounding of the sum
        if magnitude <= previous && magnitude <= f64::EPSILON * 0.1 * sum.abs() {
            break;
        }
        if !sum.is_finite() || k > 100_000 {
            break;
        }
        previous = magnitude;
        k += 1;
    }
    (sum, largest / sum.abs())
}

/// The algebraic part from its integral representation.
fn algebraic_integral(alpha: f64, z: f64) -> Result<f64> {
    let c = (PI * alpha).cos();
    let f = |x: f64| (-x.powf(1.0 / alpha)).exp() / (x * x - 2.0 * x * z * c + z * z);
    // e^{-x^{1/α}} underflows past x^{1/α} = 745
    let end = 745f64.powf(alpha);
    let split = z.abs().min(end);
    let a = quad::adaptive(f, 0.0, split, 0.0, 1e-14)?;
    let b = quad::adaptive(f, split, end, 0.0, 1e-14)?;
    Ok(-z * (PI * alpha).sin() / (alpha * PI) * (a.value + b.value))
}

/// The algebraic part `-Σ z^{-k}/Γ(1-αk)`, switching to the integral form when
/// the first omitted term is not negligible.
fn algebraic_part(params: &MLParams, z: f64, scale: f64) -> Result<f64> {
    let alpha = params.alpha;
    let term = |k: usize| z.powi(-(k as i32)) * rgamma(1.0 - alpha * k as f64);
    let sum: f64 = (1..=params.asymptotic_terms).map(term).sum();
    // first nonzero omitted term bounds the truncation error
    let omitted = (params.asymptotic_terms + 1..params.asymptotic_terms + 4)
        .map(|k| term(k).abs())
        .find(|v| *v > 0.0)
        .unwrap_or(0.0);
    if omitted <= f64::EPSILON * scale.abs().max(sum.abs()) {
        Ok(-sum)
    } else {
        algebraic_integral(alpha, z)
    }
}

/// Value of the asymptotic regime, for any z with |z| > 0.
pub fn asymptotic(params: &MLParams, z: f64) -> Result<f64> {
    let alpha = params.alpha;
    let exponential = if z > 0.0 { (z.powf(1.0 / alpha)).exp() / alpha } else { 0.0 };
    if !exponential.is_finite() {
        return Err(Error::NonFinite { what: "mittag_leffler exponential term" });
    }
    Ok(exponential + algebraic_part(params, z, exponential)?)
}

fn closed_form(alpha: f64, z: f64) -> Option<f64> {
    if alpha == 1.0 {
        Some(z.exp())
    } else if alpha == 0.5 {
        Some(erfcx(-z))
    } else {
        None
    }
}

/// E_α(z) for real z.
pub fn mittag_leffler(params: &MLParams, z: f64) -> Result<f64> {
    let alpha = params.alpha;
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::invalid("alpha", format!("{alpha} is not in (0, 1]")));
    }
    if !z.is_finite() {
        return Err(Error::domain("z", "must be finite"));
    }
    if let Some(v) = closed_form(alpha, z) {
        return if v.is_finite() { Ok(v) } else { Err(Error::NonFinite { what: "mittag_leffler" }) };
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    let cutoff = params.series_cutoff;
    let in_overlap = (z.abs() - cutoff).abs() <= OVERLAP_FRACTION * cutoff;
    let series_value = if z.abs() <= cutoff || in_overlap {
        let (v, condition) = series(alpha, z);
        if condition > SERIES_CONDITION_LIMIT || !v.is_finite() {
            // cancellation (z < 0) or overflow: the series is not usable
            None
        } else {
            Some(v)
        }
    } else {
        None
    };
    let asymptotic_value =
        if z.abs() > cutoff || in_overlap || series_value.is_none() { Some(asymptotic(params, z)?) } else { None };
    if let (true, Some(s), Some(a)) = (in_overlap, series_value, asymptotic_value) {
        let rel = ((s - a) / s).abs();
        if rel > OVERLAP_TOL {
            return Err(Error::PrecisionLoss(format!(
                "series {s:e} and asymptotic {a:e} disagree by {rel:e} at z = {z}"
            )));
        }
    }
    let v = if z.abs() <= cutoff { series_value.or(asymptotic_value) } else { asymptotic_value };
    v.ok_or(Error::NonFinite { what: "mittag_leffler" })
}

/// Convenience wrapper with default cutoffs.
pub fn mittag_leffler_default(alpha: f64, z: f64) -> Result<f64> {
    mittag_leffler(&MLParams::new(alpha)?, z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn examples() {
        assert!(rel(mittag_leffler_default(1.0, 1.0).unwrap(), E) < 1e-15);
        for &a in &[0.2, 0.5, 0.9] {
            assert_eq!(mittag_leffler_default(a, 0.0).unwrap(), 1.0);
        }
        // e·erfc(-1); the statrs erfc is only good to about 1e-11 here
        let v = mittag_leffler_default(0.5, 1.0).unwrap();
        assert!(rel(v, 5.008_980_080_762_283_5) < 1e-15);
        assert!(rel(v, E * statrs::function::erf::erfc(-1.0)) < 1e-11);
    }

    #[test]
    fn half_order_closed_form_matches_series() {
        for i in -30..=30 {
            let z = i as f64 * 0.1;
            let (s, condition) = series(0.5, z);
            let c = mittag_leffler_default(0.5, z).unwrap();
            // the alternating series loses log10(condition) digits
            assert!(rel(s, c) < 1e-14 * condition.max(1.0), "z = {z}: {s} vs {c}");
        }
    }

    #[test]
    fn regimes_agree_in_overlap() {
        for &alpha in &[0.3, 0.5, 0.7] {
            let params = MLParams::new(alpha).unwrap();
            for i in 0..=20 {
                let z = 4.0 + 0.1 * i as f64;
                let (s, _) = series(alpha, z);
                let a = asymptotic(&params, z).unwrap();
                assert!(rel(s, a) < 1e-9, "alpha {alpha}, z {z}: {s} vs {a}");
            }
        }
    }

    #[test]
    fn integral_form_reproduces_negative_arguments() {
        // E_{1/2}(-x) = erfcx(x)
        for &x in &[0.5, 2.0, 7.0, 40.0] {
            let v = algebraic_integral(0.5, -x).unwrap();
            assert!(rel(v, erfcx(x)) < 1e-12, "x = {x}");
        }
        // deep negative argument for α = 0.3, where the series cancels
        let params = MLParams::new(0.3).unwrap();
        let v = mittag_leffler(&params, -4.0).unwrap();
        assert!(v > 0.0 && v < 1.0);
        let (_, condition) = series(0.3, -4.0);
        assert!(condition > SERIES_CONDITION_LIMIT);
    }

    #[test]
    fn increasing_and_normalized_amplitude() {
        for &alpha in &[0.3, 0.5, 0.7] {
            let params = MLParams::new(alpha).unwrap();
            let mut last = 0.0;
            for i in 0..120 {
                let v = mittag_leffler(&params, i as f64 * 0.05).unwrap();
                assert!(v > last);
                last = v;
            }
            let z = 50f64.powf(alpha);
            let v = mittag_leffler(&params, z).unwrap();
            let ratio = v * alpha * (-z.powf(1.0 / alpha)).exp();
            assert!((ratio - 1.0).abs() < 1e-6, "alpha {alpha}: {ratio}");
        }
    }

    #[test]
    fn rejects_bad_alpha() {
        assert!(MLParams::new(0.0).is_err());
        assert!(MLParams::new(1.2).is_err());
    }
}
