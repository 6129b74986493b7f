//! Integration over the upper half of a deformed Bromwich contour.
//!
//! The integrands here satisfy `f(p̄) = conj f(p)`, so the full contour
//! integral reduces to the upper half:
//!
//! ```text
//! (1/2πi) ∫ f(p) dp = Im(I)/π,   I = ∫_upper f(p) dp.
//! ```
//!
//! The upper half runs up the vertical segment from `c` to `c + iT` and then
//! out along the ray `c + iT + ρ e^{i(π/2+β)}`, which leans into the left
//! half-plane where `e^{pt}` decays. Between the ray and the vertical line
//! the integrands are analytic, so the tilt changes nothing but the decay.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad;

/// Quadrature used on the vertical segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// Trapezoid rule in a variable that clusters nodes at both ends of the
    /// segment, with node doubling until successive sums agree.
    Trapezoid,
    /// Adaptive Gauss–Kronrod on geometric panels.
    GaussSegments,
}

/// Agreement between successive trapezoid sums.
pub const TRAPEZOID_TOL: f64 = 1e-10;
const TRAPEZOID_MAX_NODES: usize = 1 << 22;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Path {
    pub abscissa: f64,
    pub height: f64,
    pub tilt: f64,
    /// Largest |p| the ray may reach before the tail is declared divergent.
    pub reach_cap: f64,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Accuracy {
    pub rule: Rule,
    pub nodes: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Path {
    fn corner(&self) -> Complex64 {
        Complex64::new(self.abscissa, self.height)
    }

    fn direction(&self) -> Complex64 {
        Complex64::from_polar(1.0, FRAC_PI_2 + self.tilt)
    }

    /// Point at distance ρ along the ray.
    pub fn ray_point(&self, rho: f64) -> Complex64 {
        self.corner() + self.direction() * rho
    }
}

fn vertical_gauss<F: Fn(Complex64) -> Complex64>(f: &F, path: &Path, acc: &Accuracy) -> Result<Complex64> {
    let c = path.abscissa;
    let h = path.height;
    let g = |tau: f64| f(Complex64::new(c, tau)) * Complex64::i();
    let breaks = [0.0, h / 8.0, h / 4.0, h / 2.0, h];
    Ok(quad::adaptive_on(g, &breaks, acc.abs_tol, acc.rel_tol)?.value)
}

fn vertical_trapezoid<F: Fn(Complex64) -> Complex64>(f: &F, path: &Path, acc: &Accuracy) -> Result<Complex64> {
    let c = path.abscissa;
    let h = path.height;
    // τ = T(u - sin(2πu)/(2π)); dτ/du vanishes at both ends
    let g = |u: f64| {
        let tau = h * (u - (2.0 * PI * u).sin() / (2.0 * PI));
        let jac = h * (1.0 - (2.0 * PI * u).cos());
        f(Complex64::new(c, tau)) * Complex64::new(0.0, jac)
    };
    let mut n = acc.nodes.max(2);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut absolute = 0.0;
    for j in 1..n {
        let v = g(j as f64 / n as f64);
        sum += v;
        absolute += v.norm();
    }
    let mut estimate = sum / n as f64;
    loop {
        if 2 * n > TRAPEZOID_MAX_NODES {
            return Err(Error::Quadrature(format!(
                "trapezoid sums still changing at {n} nodes on the vertical segment"
            )));
        }
        let mut added = Complex64::new(0.0, 0.0);
        for j in 0..n {
            let v = g((2 * j + 1) as f64 / (2 * n) as f64);
            added += v;
            absolute += v.norm();
        }
        sum += added;
        n *= 2;
        let refined = sum / n as f64;
        let change = (refined - estimate).norm();
        let floor = 100.0 * f64::EPSILON * absolute / n as f64;
        estimate = refined;
        if change <= acc.abs_tol.max(TRAPEZOID_TOL * refined.norm()).max(floor) {
            return Ok(refined);
        }
    }
}

/// I = ∫_upper f(p) dp. `time` sets the decay length `1/(t sin β)` of
/// `e^{pt}` along the ray, which sizes the first ray panel.
pub(crate) fn upper_integral<F: Fn(Complex64) -> Complex64>(
    f: F,
    path: &Path,
    acc: &Accuracy,
    time: f64,
) -> Result<Complex64> {
    if path.corner().norm() > path.reach_cap {
        return Err(Error::NonConvergentTail { reached: path.corner().norm() });
    }
    let vertical = match acc.rule {
        Rule::GaussSegments => vertical_gauss(&f, path, acc)?,
        Rule::Trapezoid => vertical_trapezoid(&f, path, acc)?,
    };
    let dir = path.direction();
    let ray = |rho: f64| f(path.ray_point(rho)) * dir;
    let decay_length = 1.0 / (time * path.tilt.sin());
    let first_panel = path.corner().norm().min(decay_length);
    let abs_tol = acc.abs_tol.max(acc.rel_tol * vertical.norm());
    let tail = quad::to_infinity(ray, 0.0, first_panel, abs_tol, acc.rel_tol, path.reach_cap)?;
    Ok(vertical + tail.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    fn accuracy(rule: Rule) -> Accuracy {
        Accuracy { rule, nodes: 64, abs_tol: 1e-15, rel_tol: 1e-13 }
    }

    #[test]
    fn inverts_shifted_exponential() {
        // 1/(p+1) ↦ e^{-t}
        for rule in [Rule::GaussSegments, Rule::Trapezoid] {
            for &t in &[0.1, 1.0, 7.0] {
                let path = Path { abscissa: 0.5, height: 1.0, tilt: FRAC_PI_4, reach_cap: 1e8 };
                let f = |p: Complex64| (p * t).exp() / (p + 1.0);
                let v = upper_integral(f, &path, &accuracy(rule), t).unwrap().im / PI;
                assert!((v - (-t).exp()).abs() < 1e-12, "{rule:?}, t = {t}: {v}");
            }
        }
    }

    #[test]
    fn inverts_branch_point() {
        // p^{-1/2} ↦ 1/√(πt)
        let t = 2.0;
        let path = Path { abscissa: 1.0 / t, height: 2.0 / t, tilt: FRAC_PI_4, reach_cap: 1e8 };
        let f = |p: Complex64| (p * t).exp() / p.sqrt();
        let v = upper_integral(f, &path, &accuracy(Rule::GaussSegments), t).unwrap().im / PI;
        assert!((v - 1.0 / (PI * t).sqrt()).abs() < 1e-12, "{v}");
    }

    #[test]
    fn reports_divergent_tail() {
        let path = Path { abscissa: 1.0, height: 1.0, tilt: 1e-9, reach_cap: 1e3 };
        let f = |p: Complex64| p.exp() / p.sqrt();
        let err = upper_integral(f, &path, &accuracy(Rule::GaussSegments), 1.0).unwrap_err();
        assert!(matches!(err, Error::NonConvergentTail { .. }), "{err:?}");
    }
}
