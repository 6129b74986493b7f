//! The growth exponent `p₀(λ)`, the unique positive root of `Φ(p) = λ`, and
//! the amplitude `λ/(Φ′(p₀)p₀)` of the leading exponential.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::KernelSymbol;

/// Relative width at which the safeguarded Newton iteration stops.
pub const ROOT_REL_TOL: f64 = 1e-13;
/// Residual bound |Φ(p₀) - λ| ≤ RESIDUAL_TOL·max(1, λ).
pub const RESIDUAL_TOL: f64 = 1e-12;
/// Relative slack demanded by the strict superadditivity test.
pub const SUPERADDITIVITY_SLACK: f64 = 1e-12;

const MAX_ITERATIONS: usize = 200;
// bracket growth stops at 2^±1023
const MAX_DOUBLINGS: i32 = 1023;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootResult {
    pub p0: f64,
    /// Φ(p₀) - λ.
    pub residual: f64,
    pub iterations: usize,
    pub bracket: (f64, f64),
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda.is_finite() && lambda > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid("lambda", format!("{lambda} must be positive")))
    }
}

/// Solves `Φ(p) = λ` for p > 0.
pub fn p0_of_lambda(symbol: &KernelSymbol, lambda: f64) -> Result<RootResult> {
    check_lambda(lambda)?;
    let phi = |p: f64| symbol.phi_real_unchecked(p);

    // Bracket by doubling or halving from p = 1.
    let (mut lo, mut hi) = (1.0, 1.0);
    let mut f_lo = phi(1.0);
    let mut f_hi = f_lo;
    if f_lo < lambda {
        let mut k = 0;
        while f_hi < lambda {
            lo = hi;
            f_lo = f_hi;
            k += 1;
            if k > MAX_DOUBLINGS {
                return Err(Error::BracketFailure { lambda, saturation: f_hi });
            }
            hi *= 2.0;
            f_hi = phi(hi);
        }
    } else {
        let mut k = 0;
        while f_lo > lambda {
            hi = lo;
            f_hi = f_lo;
            k += 1;
            if k > MAX_DOUBLINGS {
                return Err(Error::BracketFailure { lambda, saturation: f_lo });
            }
            lo *= 0.5;
            f_lo = phi(lo);
        }
    }
    if !(f_lo.is_finite() && f_hi.is_finite()) {
        return Err(Error::NonFinite { what: "phi while bracketing" });
    }
    let bracket = (lo, hi);

    if f_lo == lambda {
        return Ok(RootResult { p0: lo, residual: 0.0, iterations: 0, bracket });
    }
    if f_hi == lambda {
        return Ok(RootResult { p0: hi, residual: 0.0, iterations: 0, bracket });
    }

    // Safeguarded Newton: bisect whenever the step leaves (lo, hi).
    let mut p = 0.5 * (lo + hi);
    let mut iterations = 0;
    while iterations < MAX_ITERATIONS {
        iterations += 1;
        let f = phi(p) - lambda;
        if f == 0.0 {
            lo = p;
            hi = p;
            break;
        }
        if f < 0.0 {
            lo = p;
        } else {
            hi = p;
        }
        let slope = symbol.phi_prime(p).unwrap_or(f64::NAN);
        let newton = p - f / slope;
        let next = if newton.is_finite() && newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        let step = (next - p).abs();
        p = next;
        if step <= ROOT_REL_TOL * p || hi - lo <= ROOT_REL_TOL * p {
            break;
        }
    }
    // Final polish: the best of p and the bracket ends.
    let best = [p, lo, hi]
        .into_iter()
        .min_by(|a, b| (phi(*a) - lambda).abs().total_cmp(&(phi(*b) - lambda).abs()))
        .expect("three candidates");
    let residual = phi(best) - lambda;
    if residual.abs() > RESIDUAL_TOL * lambda.max(1.0) {
        return Err(Error::PrecisionLoss(format!(
            "root residual {residual:e} exceeds tolerance for lambda = {lambda}"
        )));
    }
    Ok(RootResult { p0: best, residual, iterations, bracket })
}

/// Quantities in the leading term `A e^{p₀ t}` of the growth solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Asymptote {
    pub p0: f64,
    pub phi_prime_p0: f64,
    pub amplitude: f64,
}

pub fn asymptote(symbol: &KernelSymbol, lambda: f64) -> Result<Asymptote> {
    let root = p0_of_lambda(symbol, lambda)?;
    let phi_prime_p0 = symbol.phi_prime(root.p0)?;
    if phi_prime_p0 <= 0.0 {
        return Err(Error::Inadmissible(format!("phi'(p0) = {phi_prime_p0} is not positive")));
    }
    Ok(Asymptote { p0: root.p0, phi_prime_p0, amplitude: lambda / (phi_prime_p0 * root.p0) })
}

/// A = λ/(Φ′(p₀)·p₀).
pub fn asymptotic_amplitude(symbol: &KernelSymbol, lambda: f64) -> Result<f64> {
    Ok(asymptote(symbol, lambda)?.amplitude)
}

/// Whether p₀(x+y) > p₀(x) + p₀(y) with a relative margin.
pub fn superadditivity_check(symbol: &KernelSymbol, x: f64, y: f64) -> Result<bool> {
    check_lambda(x)?;
    check_lambda(y)?;
    let joint = p0_of_lambda(symbol, x + y)?.p0;
    let px = p0_of_lambda(symbol, x)?.p0;
    let py = p0_of_lambda(symbol, y)?.p0;
    Ok(joint > px + py + SUPERADDITIVITY_SLACK * joint)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{DistributedOrder, StieltjesMeasure};
    use std::f64::consts::E;

    fn uniform_order() -> KernelSymbol {
        KernelSymbol::DistributedOrder(DistributedOrder::uniform())
    }

    /// Inverse of (p - 1)/ln p by plain bisection on the closed form.
    fn closed_form_inverse(lambda: f64) -> f64 {
        let f = |p: f64| if (p - 1.0).abs() < 1e-9 { 1.0 + (p - 1.0) / 2.0 } else { (p - 1.0) / p.ln() };
        let (mut lo, mut hi): (f64, f64) = (1e-300, 1e300);
        for _ in 0..3000 {
            let mid = (lo * hi).sqrt();
            if f(mid) < lambda {
                lo = mid
            } else {
                hi = mid
            }
            if hi / lo - 1.0 < 1e-16 {
                break;
            }
        }
        (lo * hi).sqrt()
    }

    #[test]
    fn root_examples() {
        let r = p0_of_lambda(&KernelSymbol::power_law(0.5).unwrap(), 2.0).unwrap();
        assert!((r.p0 - 4.0).abs() < 1e-13 * 4.0);
        assert!(r.bracket.0 <= r.p0 && r.p0 <= r.bracket.1);

        let mix = KernelSymbol::mixture(&[(1.0, 0.5), (1.0, 1.0 / 3.0)]).unwrap();
        assert!((p0_of_lambda(&mix, 2.0).unwrap().p0 - 1.0).abs() < 1e-13);

        let r = p0_of_lambda(&uniform_order(), E - 1.0).unwrap();
        let oracle = closed_form_inverse(E - 1.0);
        assert!((oracle - E).abs() < 1e-12);
        assert!((r.p0 - oracle).abs() < 1e-12 * E, "{} vs {oracle}", r.p0);
    }

    #[test]
    fn saturating_symbol_fails_to_bracket() {
        let atom = KernelSymbol::from_measure(StieltjesMeasure::atom(1.0, 1.0).unwrap());
        match p0_of_lambda(&atom, 2.0) {
            Err(Error::BracketFailure { saturation, .. }) => assert!((saturation - 1.0).abs() < 1e-9),
            other => panic!("expected bracket failure, got {other:?}"),
        }
        let origin = KernelSymbol::from_measure(StieltjesMeasure::atom(0.0, 3.0).unwrap());
        assert!(matches!(p0_of_lambda(&origin, 1.0), Err(Error::BracketFailure { .. })));
        assert!(p0_of_lambda(&origin, -1.0).is_err());
    }

    #[test]
    fn amplitude_examples() {
        let pl = KernelSymbol::power_law(0.5).unwrap();
        assert!((asymptotic_amplitude(&pl, 3.0).unwrap() - 2.0).abs() < 1e-12 * 2.0);

        let near_one = KernelSymbol::mixture(&[(1.0, 0.999)]).unwrap();
        assert!((asymptotic_amplitude(&near_one, 1.0).unwrap() - 1.0 / 0.999).abs() < 1e-12);

        let mix = KernelSymbol::mixture(&[(1.0, 0.5), (1.0, 1.0 / 3.0)]).unwrap();
        let a = asymptote(&mix, 2.0).unwrap();
        // central difference check of Φ′(1)
        let h = 1e-6;
        let fd = (mix.phi_real(1.0 + h).unwrap() - mix.phi_real(1.0 - h).unwrap()) / (2.0 * h);
        assert!((a.phi_prime_p0 - fd).abs() < 1e-8);
        assert!((a.amplitude - 2.4).abs() < 1e-12);
    }

    #[test]
    fn superadditivity_examples() {
        let pl = KernelSymbol::power_law(0.5).unwrap();
        assert!(superadditivity_check(&pl, 1.0, 1.0).unwrap());
        assert!(superadditivity_check(&pl, 1.0, 3.0).unwrap());

        let sym = uniform_order();
        assert!(superadditivity_check(&sym, 1.0, 1.0).unwrap());
        let lhs = closed_form_inverse(2.0);
        let rhs = 2.0 * closed_form_inverse(1.0);
        assert!(lhs > rhs);
    }
}
