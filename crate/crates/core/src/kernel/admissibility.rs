//! Numerical evidence for the kernel conditions: the limits of `K` and `pK`
//! at 0 and ∞, and the integrability of `1/(sΦ(s))` on `[1, ∞)`.

use serde::Serialize;

use super::KernelSymbol;
use crate::quad;

/// Decades sampled on each side of p = 1 before extending.
const BASE_DECADES: i32 = 8;
/// Furthest decade tried when a trend is present but slow.
const MAX_DECADES: i32 = 300;
/// Decades over which the trend must be strictly monotone.
const TREND_DECADES: i32 = 4;
/// Required change toward the limit, relative to the value at p = 1.
const LIMIT_FACTOR: f64 = 100.0;

/// Relative size of a doubling increment below which the integral is converged.
const CAUCHY_TOL: f64 = 1e-8;
/// Number of doublings of the upper limit tried (S_max = 2^1020).
const MAX_DOUBLINGS: usize = 1020;

/// Sampled values `K(p)` and `pK(p)` backing the limit decisions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitSample {
    pub p: f64,
    pub laplace_k: f64,
    pub phi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibilityReport {
    /// K(p) → ∞ as p → 0 and K(p) → 0 as p → ∞.
    pub limits_5_ok: bool,
    /// pK(p) → 0 as p → 0 and pK(p) → ∞ as p → ∞.
    pub limits_6_ok: bool,
    /// ∫₁^∞ ds/(sΦ(s)) < ∞.
    pub condition_16_ok: bool,
    /// Value of the integral, `None` when it diverges.
    pub condition_16_value: Option<f64>,
    pub notes: String,
    pub samples: Vec<LimitSample>,
}

impl AdmissibilityReport {
    pub fn all_ok(&self) -> bool {
        self.limits_5_ok && self.limits_6_ok && self.condition_16_ok
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Side {
    Zero,
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Target {
    Zero,
    Infinity,
}

/// Decides `lim f(p) = target` as p tends to `side`, returning the verdict and
/// a short explanation.
fn check_limit(f: &dyn Fn(f64) -> f64, side: Side, target: Target) -> (bool, String) {
    let p_at = |d: i32| match side {
        Side::Zero => 10f64.powi(-d),
        Side::Infinity => 10f64.powi(d),
    };
    let reference = f(1.0);
    if !(reference.is_finite() && reference > 0.0) {
        return (false, format!("value at p = 1 is {reference}"));
    }
    let mut decades = BASE_DECADES;
    loop {
        let values: Vec<f64> = (decades - TREND_DECADES..=decades).map(|d| f(p_at(d))).collect();
        let monotone = values.windows(2).all(|w| match target {
            Target::Zero => w[1] < w[0] || w[1] == 0.0,
            Target::Infinity => w[1] > w[0] || w[1] == f64::INFINITY,
        });
        let last = *values.last().expect("non-empty");
        let reached = match target {
            Target::Zero => last <= reference / LIMIT_FACTOR,
            Target::Infinity => last >= reference * LIMIT_FACTOR,
        };
        if !monotone {
            return (false, format!("no monotone trend over decades {}..{decades}", decades - TREND_DECADES));
        }
        if reached {
            return (true, format!("factor {LIMIT_FACTOR} reached by p = {:e}", p_at(decades)));
        }
        if decades >= MAX_DECADES {
            return (false, format!("trend too slow: value {last:e} at p = {:e}", p_at(decades)));
        }
        decades = (decades + TREND_DECADES).min(MAX_DECADES);
    }
}

/// Integral of 1/(sΦ(s)) over [1, 2^k] by doubling, in the variable x = ln s.
fn condition_16(symbol: &KernelSymbol) -> (Option<f64>, String) {
    let ln2 = std::f64::consts::LN_2;
    let rule = quad::gauss_legendre_on(20, 0.0, ln2);
    let mut total = 0.0;
    let mut previous: Option<f64> = None;
    for k in 0..MAX_DOUBLINGS {
        let x0 = k as f64 * ln2;
        let increment: f64 = rule.iter().map(|&(x, w)| w / symbol.phi_real_unchecked((x0 + x).exp())).sum();
        if !increment.is_finite() || increment < 0.0 {
            return (None, format!("integrand not finite on [2^{k}, 2^{}]", k + 1));
        }
        total += increment;
        if let Some(prev) = previous {
            if increment < prev && increment <= CAUCHY_TOL * total {
                // geometric tail from the last ratio of increments
                let ratio = increment / prev;
                let tail = increment * ratio / (1.0 - ratio);
                return (Some(total + tail), format!("converged after {} doublings", k + 1));
            }
        }
        previous = Some(increment);
    }
    let last = previous.unwrap_or(f64::NAN);
    (None, format!("doubling increments still {last:e} (partial integral {total:e}) at S_max = 2^{MAX_DOUBLINGS}"))
}

pub(super) fn check(symbol: &KernelSymbol) -> AdmissibilityReport {
    let k_hat = |p: f64| symbol.phi_real_unchecked(p) / p;
    let phi = |p: f64| symbol.phi_real_unchecked(p);

    let (k0, k0_note) = check_limit(&k_hat, Side::Zero, Target::Infinity);
    let (kinf, kinf_note) = check_limit(&k_hat, Side::Infinity, Target::Zero);
    let (phi0, phi0_note) = check_limit(&phi, Side::Zero, Target::Zero);
    let (phiinf, phiinf_note) = check_limit(&phi, Side::Infinity, Target::Infinity);
    let (value, integral_note) = condition_16(symbol);

    let samples = (-BASE_DECADES..=BASE_DECADES)
        .map(|d| {
            let p = 10f64.powi(d);
            LimitSample { p, laplace_k: k_hat(p), phi: phi(p) }
        })
        .collect();

    let notes = format!(
        "K(0+): {k0_note}; K(inf): {kinf_note}; pK(0+): {phi0_note}; pK(inf): {phiinf_note}; \
         integral: {integral_note}"
    );
    AdmissibilityReport {
        limits_5_ok: k0 && kinf,
        limits_6_ok: phi0 && phiinf,
        condition_16_ok: value.is_some(),
        condition_16_value: value,
        notes,
        samples,
    }
}
