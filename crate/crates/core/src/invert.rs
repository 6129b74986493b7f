//! Laplace inversion of the growth and relaxation resolvents.
//!
//! The growth solution has transform `K/(Φ - λ) = 1/p + λ/(p(Φ - λ))`, with a
//! simple pole at `p₀`. Moving the Bromwich line to `Re p = r < p₀` picks up
//! the residue `A e^{p₀t}`, `A = λ/(Φ′(p₀)p₀)`, and leaves
//!
//! ```text
//! V(t) = 1 + (λ/2πi) ∫_{Re p = r} e^{pt} / (p(Φ(p) - λ)) dp,
//! ```
//!
//! so `u = A e^{p₀t} + V(t)` ([`Mode::ResidueSplit`]). [`Mode::Bromwich`]
//! integrates the same integrand on `Re p = γ > p₀` instead. Relaxation,
//! with transform `1/p - λ/(p(Φ + λ))`, has no pole off the cut.
//!
//! Exponentials are factored out of the integrals, so `log u` and the
//! normalized value `e^{-p₀t} u` stay finite when `e^{p₀t}` overflows.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use crate::contour::Rule;
use crate::contour::{self, Accuracy, Path};
use crate::error::{Error, Result};
use crate::kernel::KernelSymbol;
use crate::rootfind::{self, Asymptote};

/// Beyond this value of `p₀t` only `log u` and `e^{-p₀t}u` are meaningful.
pub const LOG_SPACE_THRESHOLD: f64 = 700.0;
/// Default cap on |p| along the contour.
pub const DEFAULT_REACH_CAP: f64 = 1e8;
/// Smallest accepted trapezoid starting node count.
pub const MIN_NODES: usize = 64;

const REL_TOL: f64 = 1e-13;
const ABS_TOL: f64 = 1e-14;

/// Parameters of the inversion contour. `None` abscissas take the defaults
/// `r = p₀/2` and `γ = 2p₀` (growth) or `γ = min(1, 1/t)` (relaxation).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContourSpec {
    pub gamma: Option<f64>,
    pub r: Option<f64>,
    /// Cap on |p| reached by the contour tail, for t ≥ 1. Below t = 1 the
    /// cap scales as 1/t, since `e^{pt}` only decays once |p| ≫ 1/t.
    pub truncation_height: f64,
    /// Starting node count of the trapezoid rule.
    pub nodes: usize,
    pub rule: Rule,
}

impl Default for ContourSpec {
    fn default() -> Self {
        ContourSpec {
            gamma: None,
            r: None,
            truncation_height: DEFAULT_REACH_CAP,
            nodes: MIN_NODES,
            rule: Rule::GaussSegments,
        }
    }
}

impl ContourSpec {
    fn validate(&self) -> Result<()> {
        if self.nodes < MIN_NODES {
            return Err(Error::invalid("nodes", format!("{} is below {MIN_NODES}", self.nodes)));
        }
        if !(self.truncation_height.is_finite() && self.truncation_height > 0.0) {
            return Err(Error::invalid("truncation_height", "must be positive and finite"));
        }
        Ok(())
    }

    fn accuracy(&self, abs_tol: f64, rel_tol: f64) -> Accuracy {
        Accuracy { rule: self.rule, nodes: self.nodes, abs_tol, rel_tol }
    }

    fn path(&self, abscissa: f64, t: f64) -> Path {
        let reach_cap = self.truncation_height * (1.0 / t).max(1.0);
        Path { abscissa, height: 2.0 * abscissa, tilt: FRAC_PI_4, reach_cap }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    ResidueSplit,
    Bromwich,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthSolution {
    pub lambda: f64,
    pub p0: f64,
    pub amplitude: f64,
    pub times: Vec<f64>,
    /// u(t); infinite once `p₀t` passes the log-space threshold.
    pub values: Vec<f64>,
    pub log_values: Vec<f64>,
    /// e^{-p₀t} u(t).
    pub normalized: Vec<f64>,
    /// V(t) = u(t) - A e^{p₀t}.
    pub remainders: Vec<f64>,
    pub mode: Mode,
}

/// One evaluated time point.
#[derive(Debug, Clone, Copy)]
struct Point {
    value: f64,
    log_value: f64,
    normalized: f64,
    remainder: f64,
    /// V(t) e^{-p₀t}, computed without subtracting A.
    remainder_ratio: f64,
}

fn check_times(times: &[f64]) -> Result<()> {
    for &t in times {
        if !(t.is_finite() && t > 0.0) {
            return Err(Error::invalid("times", format!("{t} is not a positive time")));
        }
    }
    Ok(())
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda.is_finite() && lambda > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid("lambda", format!("{lambda} must be positive")))
    }
}

/// `1 + e^{a}·w`, combining the exponents when `e^{a}` alone would overflow.
fn one_plus_scaled(a: f64, w: f64) -> f64 {
    if a < LOG_SPACE_THRESHOLD {
        1.0 + a.exp() * w
    } else if w == 0.0 {
        1.0
    } else {
        w.signum() * (a + w.abs().ln()).exp() + 1.0
    }
}

/// (λ/π) Im ∫_upper e^{(p-c)t}/(p(Φ(p) - λ)) dp on the line `Re p = c`.
fn shifted_integral(
    symbol: &KernelSymbol,
    lambda: f64,
    c: f64,
    t: f64,
    spec: &ContourSpec,
    abs_tol: f64,
) -> Result<f64> {
    let f = |p: Complex64| ((p - c) * t).exp() / (p * (symbol.phi_unchecked(p) - lambda));
    let scale = PI / lambda;
    let acc = spec.accuracy(abs_tol * scale, REL_TOL);
    let integral = contour::upper_integral(f, &spec.path(c, t), &acc, t)?;
    let w = integral.im / scale;
    if w.is_finite() {
        Ok(w)
    } else {
        Err(Error::NonFinite { what: "contour integral" })
    }
}

fn residue_split_point(
    symbol: &KernelSymbol,
    lambda: f64,
    asym: &Asymptote,
    r: f64,
    t: f64,
    spec: &ContourSpec,
) -> Result<Point> {
    // absolute accuracy on V of about 1e-14, independent of the size of u
    let w = shifted_integral(symbol, lambda, r, t, spec, ABS_TOL * (-r * t).exp())?;
    let remainder = one_plus_scaled(r * t, w);
    let remainder_ratio = (-asym.p0 * t).exp() + w * ((r - asym.p0) * t).exp();
    let normalized = asym.amplitude + remainder_ratio;
    let log_value = asym.p0 * t + normalized.ln();
    let value = if asym.p0 * t < LOG_SPACE_THRESHOLD {
        asym.amplitude * (asym.p0 * t).exp() + remainder
    } else {
        log_value.exp()
    };
    Ok(Point { value, log_value, normalized, remainder, remainder_ratio })
}

fn bromwich_point(
    symbol: &KernelSymbol,
    lambda: f64,
    asym: &Asymptote,
    gamma: f64,
    t: f64,
    spec: &ContourSpec,
) -> Result<Point> {
    let magnitude = (-gamma * t).exp().max(asym.amplitude * ((asym.p0 - gamma) * t).exp());
    let w = shifted_integral(symbol, lambda, gamma, t, spec, ABS_TOL * magnitude)?;
    let normalized = (-asym.p0 * t).exp() + w * ((gamma - asym.p0) * t).exp();
    let log_value = asym.p0 * t + normalized.ln();
    let value = if asym.p0 * t < LOG_SPACE_THRESHOLD { one_plus_scaled(gamma * t, w) } else { log_value.exp() };
    let remainder_ratio = normalized - asym.amplitude;
    let remainder = if asym.p0 * t < LOG_SPACE_THRESHOLD {
        value - asym.amplitude * (asym.p0 * t).exp()
    } else {
        remainder_ratio * (asym.p0 * t).exp()
    };
    Ok(Point { value, log_value, normalized, remainder, remainder_ratio })
}

fn require_condition_16(symbol: &KernelSymbol) -> Result<()> {
    let report = symbol.check_admissibility();
    if report.condition_16_ok {
        Ok(())
    } else {
        Err(Error::Inadmissible(format!(
            "the integral of 1/(s phi(s)) over [1, inf) does not converge ({})",
            report.notes
        )))
    }
}

/// Resolved abscissa for `mode`, validated against `p₀`.
fn abscissa(spec: &ContourSpec, mode: Mode, p0: f64) -> Result<f64> {
    match mode {
        Mode::ResidueSplit => {
            let r = spec.r.unwrap_or(0.5 * p0);
            if !(r > 0.0 && r < p0) {
                return Err(Error::invalid("r", format!("{r} is not in (0, p0 = {p0})")));
            }
            Ok(r)
        }
        Mode::Bromwich => {
            let gamma = spec.gamma.unwrap_or(2.0 * p0);
            if !(gamma > p0 && gamma.is_finite()) {
                return Err(Error::invalid("gamma", format!("{gamma} is not above p0 = {p0}")));
            }
            Ok(gamma)
        }
    }
}

fn evaluate(
    symbol: &KernelSymbol,
    lambda: f64,
    times: &[f64],
    spec: &ContourSpec,
    mode: Mode,
) -> Result<(Asymptote, Vec<Point>)> {
    check_lambda(lambda)?;
    check_times(times)?;
    spec.validate()?;
    if mode == Mode::ResidueSplit {
        require_condition_16(symbol)?;
    }
    let asym = rootfind::asymptote(symbol, lambda)?;
    let c = abscissa(spec, mode, asym.p0)?;
    let points = times
        .par_iter()
        .map(|&t| match mode {
            Mode::ResidueSplit => residue_split_point(symbol, lambda, &asym, c, t, spec),
            Mode::Bromwich => bromwich_point(symbol, lambda, &asym, c, t, spec),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((asym, points))
}

/// Growth solution by residue plus shifted-contour remainder.
pub fn solve_growth(
    symbol: &KernelSymbol,
    lambda: f64,
    times: &[f64],
    contour: &ContourSpec,
) -> Result<GrowthSolution> {
    solve_growth_with(symbol, lambda, times, contour, Mode::ResidueSplit)
}

pub fn solve_growth_with(
    symbol: &KernelSymbol,
    lambda: f64,
    times: &[f64],
    contour: &ContourSpec,
    mode: Mode,
) -> Result<GrowthSolution> {
    let (asym, points) = evaluate(symbol, lambda, times, contour, mode)?;
    Ok(GrowthSolution {
        lambda,
        p0: asym.p0,
        amplitude: asym.amplitude,
        times: times.to_vec(),
        values: points.iter().map(|p| p.value).collect(),
        log_values: points.iter().map(|p| p.log_value).collect(),
        normalized: points.iter().map(|p| p.normalized).collect(),
        remainders: points.iter().map(|p| p.remainder).collect(),
        mode,
    })
}

/// V(t) e^{-p₀t}, which tends to zero as t grows.
pub fn remainder_ratio(symbol: &KernelSymbol, lambda: f64, t: f64, contour: &ContourSpec) -> Result<f64> {
    let (_, points) = evaluate(symbol, lambda, &[t], contour, Mode::ResidueSplit)?;
    Ok(points[0].remainder_ratio)
}

/// Solution of the relaxation equation `𝔻u = -λu`, `u(0) = 1`.
pub fn solve_relaxation(symbol: &KernelSymbol, lambda: f64, times: &[f64], contour: &ContourSpec) -> Result<Vec<f64>> {
    check_lambda(lambda)?;
    check_times(times)?;
    contour.validate()?;
    if let Some(g) = contour.gamma {
        if !(g > 0.0 && g.is_finite()) {
            return Err(Error::invalid("gamma", format!("{g} must be positive")));
        }
    }
    times
        .par_iter()
        .map(|&t| {
            // a fixed abscissa would cost e^{γt} in cancellation at large t
            let gamma = contour.gamma.unwrap_or_else(|| (1.0 / t).min(1.0));
            let f = |p: Complex64| ((p - gamma) * t).exp() / (p * (symbol.phi_unchecked(p) + lambda));
            let scale = PI / lambda;
            let acc = contour.accuracy(ABS_TOL * (-gamma * t).exp() * scale, REL_TOL);
            let integral = contour::upper_integral(f, &contour.path(gamma, t), &acc, t)?;
            let v = one_plus_scaled(gamma * t, -integral.im / scale);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::NonFinite { what: "relaxation contour integral" })
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::StieltjesMeasure;
    use std::f64::consts::E;

    fn half() -> KernelSymbol {
        KernelSymbol::power_law(0.5).unwrap()
    }

    fn erfcx(x: f64) -> f64 {
        // independent of the crate's own error functions
        (x * x).exp() * statrs::function::erf::erfc(x)
    }

    #[test]
    fn growth_examples() {
        let spec = ContourSpec::default();
        // u - 1 ≈ 2√(t/π) near 0
        let sol = solve_growth(&half(), 1.0, &[1e-13, 1.0, 25.0], &spec).unwrap();
        assert!((sol.values[0] - 1.0).abs() < 1e-6);
        assert!((sol.values[1] - E * statrs::function::erf::erfc(-1.0)).abs() < 1e-9 * 5.0);
        let scaled = (-25.0f64).exp() * sol.values[2];
        assert!((1.99..=2.01).contains(&scaled), "{scaled}");
        for (i, t) in sol.times.iter().enumerate() {
            let split = sol.amplitude * (sol.p0 * t).exp() + sol.remainders[i];
            assert_eq!(split, sol.values[i]);
        }
    }

    #[test]
    fn both_rules_agree() {
        let trap = ContourSpec { rule: Rule::Trapezoid, ..ContourSpec::default() };
        let times = [0.05, 0.7, 3.0];
        let a = solve_growth(&half(), 1.0, &times, &trap).unwrap();
        let b = solve_growth(&half(), 1.0, &times, &ContourSpec::default()).unwrap();
        for i in 0..times.len() {
            assert!((a.values[i] / b.values[i] - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn bromwich_matches_split() {
        let spec = ContourSpec::default();
        let times = [0.1, 1.0, 5.0];
        let a = solve_growth(&half(), 1.0, &times, &spec).unwrap();
        let b = solve_growth_with(&half(), 1.0, &times, &spec, Mode::Bromwich).unwrap();
        for ((t, x), y) in times.iter().zip(&a.values).zip(&b.values) {
            assert!((x / y - 1.0).abs() < 1e-8, "t = {t}");
        }
    }

    #[test]
    fn log_space_past_overflow() {
        let sol = solve_growth(&half(), 1.0, &[800.0], &ContourSpec::default()).unwrap();
        assert!(sol.values[0].is_infinite());
        assert!((sol.log_values[0] - (800.0 + 2f64.ln())).abs() < 1e-9);
        assert!((sol.normalized[0] - 2.0).abs() < 1e-9);
    }

    #[test]
    fn relaxation_examples() {
        let spec = ContourSpec::default();
        let v = solve_relaxation(&half(), 1.0, &[1e-13, 1.0, 100.0], &spec).unwrap();
        assert!((v[0] - 1.0).abs() < 1e-6);
        assert!((v[1] - erfcx(1.0)).abs() < 1e-9);
        let leading = 1.0 / (PI * 100.0).sqrt();
        assert!(((v[2] - leading) / leading).abs() < 0.05);
        assert!((v[2] - erfcx(10.0)).abs() < 1e-9);
    }

    #[test]
    fn remainder_ratio_decays() {
        let spec = ContourSpec::default();
        let r1 = remainder_ratio(&half(), 1.0, 1.0, &spec).unwrap();
        let r5 = remainder_ratio(&half(), 1.0, 5.0, &spec).unwrap();
        let r25 = remainder_ratio(&half(), 1.0, 25.0, &spec).unwrap();
        assert!(r5.abs() < r1.abs() && r25.abs() < r5.abs());
        assert!(r25.abs() < 0.01 * 2.0);
        assert!(remainder_ratio(&half(), 1.0, 0.01, &spec).unwrap().is_finite());
        // closed form: V = E_{1/2}(√t) - 2e^t
        let exact = erfcx(-1.0) - 2.0 * E;
        assert!((r1 * E - exact).abs() < 1e-9);
    }

    #[test]
    fn refusals() {
        let spec = ContourSpec::default();
        let atom = KernelSymbol::from_measure(StieltjesMeasure::atom(1.0, 1.0).unwrap());
        assert!(matches!(solve_growth(&atom, 0.5, &[1.0], &spec), Err(Error::Inadmissible(_))));
        let narrow = ContourSpec { nodes: 8, ..spec };
        assert!(solve_growth(&half(), 1.0, &[1.0], &narrow).unwrap_err().is_input_error());
        let bad_r = ContourSpec { r: Some(3.0), ..spec };
        assert!(solve_growth(&half(), 1.0, &[1.0], &bad_r).unwrap_err().is_input_error());
        assert!(solve_growth(&half(), -1.0, &[1.0], &spec).is_err());
    }
}
