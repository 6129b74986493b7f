//! Admissible convolution kernels described by their Laplace symbols.
//!
//! A kernel `k` enters the solvers only through `K(p)`, its Laplace
//! transform, and the complete Bernstein function `Φ(p) = p K(p)`. Every
//! kind here has a Stieltjes measure `σ ≥ 0` behind it, with
//!
//! ```text
//! Φ(p) = ∫ p/(p+t) σ(dt),   K(p) = ∫ σ(dt)/(p+t),   k(s) = ∫ e^{-ts} σ(dt).
//! ```
//!
//! Power laws, their mixtures and distributed-order kernels are evaluated
//! through closed forms in `p^α`; a [`StieltjesMeasure`] is evaluated from
//! the measure directly.

mod admissibility;
pub mod spec;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad;
use crate::special::rgamma;

pub use admissibility::{AdmissibilityReport, LimitSample};

/// Number of Gauss–Legendre nodes used for distributed-order integrals.
pub const ORDER_NODES: usize = 64;

/// Relative agreement required between the 64- and 128-node order quadratures.
pub const ORDER_REFINEMENT_TOL: f64 = 1e-10;

/// A finite Stieltjes measure: point masses plus quadrature nodes standing in
/// for an absolutely continuous part.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StieltjesMeasure {
    atoms: Vec<(f64, f64)>,
    density_nodes: Vec<(f64, f64)>,
}

impl StieltjesMeasure {
    /// Builds a measure from `(location, mass)` atoms and `(location, weight)`
    /// density nodes.
    pub fn new(atoms: Vec<(f64, f64)>, density_nodes: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() && density_nodes.is_empty() {
            return Err(Error::invalid("measure", "measure has no mass"));
        }
        for (field, list) in [("measure_atoms", &atoms), ("measure_density", &density_nodes)] {
            for &(loc, mass) in list {
                if !(loc.is_finite() && loc >= 0.0) {
                    return Err(Error::invalid(field, format!("location {loc} must be finite and >= 0")));
                }
                if !(mass.is_finite() && mass > 0.0) {
                    return Err(Error::invalid(field, format!("mass {mass} must be finite and > 0")));
                }
            }
        }
        let measure = StieltjesMeasure { atoms, density_nodes };
        let total = measure.points().map(|(t, m)| m / (1.0 + t)).sum::<f64>();
        if !total.is_finite() {
            return Err(Error::NonFinite { what: "measure moment" });
        }
        Ok(measure)
    }

    pub fn atom(location: f64, mass: f64) -> Result<Self> {
        Self::new(vec![(location, mass)], Vec::new())
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn density_nodes(&self) -> &[(f64, f64)] {
        &self.density_nodes
    }

    /// All support points with their masses, atoms first.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.atoms.iter().chain(self.density_nodes.iter()).copied()
    }

    /// ∫ σ(dt)/(1+t), finite by construction.
    pub fn moment(&self) -> f64 {
        self.points().map(|(t, m)| m / (1.0 + t)).sum()
    }
}

/// One component `weight · p^exponent` of a power-law mixture.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MixtureTerm {
    pub weight: f64,
    pub exponent: f64,
}

/// How the order weight μ was supplied.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum OrderWeight {
    /// Values of μ at equally spaced orders `j/(n-1)`, interpolated by the
    /// Lagrange polynomial through them (a single value is a constant).
    Samples(Vec<f64>),
    /// μ given as a function; only its values at the quadrature nodes are kept.
    Function,
}

/// Distributed-order kernel `Φ(p) = ∫₀¹ p^α μ(α) dα` on a fixed Gauss–Legendre rule.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistributedOrder {
    /// `(α_j, w_j μ(α_j))` pairs.
    nodes: Vec<(f64, f64)>,
    weight: OrderWeight,
    reduced_precision: bool,
}

impl DistributedOrder {
    /// μ ≡ 1.
    pub fn uniform() -> Self {
        Self::from_samples(vec![1.0]).expect("constant weight is valid")
    }

    pub fn from_fn(mu: impl Fn(f64) -> f64) -> Result<Self> {
        Self::build(&mu, OrderWeight::Function)
    }

    /// μ interpolating `samples` at equally spaced points of [0, 1].
    pub fn from_samples(samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::invalid("mu_nodes", "at least one sample is required"));
        }
        if samples.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("mu_nodes", "samples must be finite"));
        }
        let interp = EquispacedInterpolant::new(samples.clone());
        Self::build(&|a| interp.eval(a), OrderWeight::Samples(samples))
    }

    fn build(mu: &dyn Fn(f64) -> f64, weight: OrderWeight) -> Result<Self> {
        let nodes = Self::discretize(mu, ORDER_NODES)?;
        if nodes.iter().all(|&(_, w)| w == 0.0) {
            return Err(Error::invalid("mu_nodes", "weight vanishes identically"));
        }
        let fine = Self::discretize(mu, 2 * ORDER_NODES)?;
        let reduced_precision = [1e-6, 1e-3, 1.0, 1e3, 1e6].iter().any(|&p| {
            let coarse = order_sum_real(&nodes, p);
            let refined = order_sum_real(&fine, p);
            ((coarse - refined) / refined).abs() > ORDER_REFINEMENT_TOL
        });
        Ok(DistributedOrder { nodes, weight, reduced_precision })
    }

    fn discretize(mu: &dyn Fn(f64) -> f64, n: usize) -> Result<Vec<(f64, f64)>> {
        quad::gauss_legendre_on(n, 0.0, 1.0)
            .into_iter()
            .map(|(a, w)| {
                let m = mu(a);
                if !m.is_finite() || m < 0.0 {
                    Err(Error::invalid("mu_nodes", format!("weight mu({a:.6}) = {m} must be finite and >= 0")))
                } else {
                    Ok((a, w * m))
                }
            })
            .collect()
    }

    pub fn nodes(&self) -> &[(f64, f64)] {
        &self.nodes
    }

    pub fn weight(&self) -> &OrderWeight {
        &self.weight
    }

    /// True when doubling the order quadrature changed Φ by more than 1e-10.
    pub fn is_reduced_precision(&self) -> bool {
        self.reduced_precision
    }
}

fn order_sum_real(nodes: &[(f64, f64)], p: f64) -> f64 {
    let lp = p.ln();
    nodes.iter().map(|&(a, w)| w * (a * lp).exp()).sum()
}

/// Barycentric Lagrange interpolation on equally spaced points of [0, 1].
struct EquispacedInterpolant {
    values: Vec<f64>,
    bary: Vec<f64>,
}

impl EquispacedInterpolant {
    fn new(values: Vec<f64>) -> Self {
        let n = values.len();
        // w_j = (-1)^j C(n-1, j)
        let mut bary = Vec::with_capacity(n);
        let mut binom = 1.0;
        for j in 0..n {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            bary.push(sign * binom);
            binom = binom * (n - 1 - j) as f64 / (j + 1) as f64;
        }
        EquispacedInterpolant { values, bary }
    }

    fn eval(&self, x: f64) -> f64 {
        let n = self.values.len();
        if n == 1 {
            return self.values[0];
        }
        let mut num = 0.0;
        let mut den = 0.0;
        for j in 0..n {
            let xj = j as f64 / (n - 1) as f64;
            let d = x - xj;
            if d == 0.0 {
                return self.values[j];
            }
            let c = self.bary[j] / d;
            num += c * self.values[j];
            den += c;
        }
        num / den
    }
}

/// The Laplace symbol of an admissible kernel.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum KernelSymbol {
    /// `Φ(p) = p^α`: the Caputo–Djrbashian kernel `k(t) = t^{-α}/Γ(1-α)`.
    PowerLaw {
        alpha: f64,
    },
    /// `Φ(p) = Σ w_i p^{α_i}`.
    Mixture(Vec<MixtureTerm>),
    DistributedOrder(DistributedOrder),
    FromMeasure(StieltjesMeasure),
}

fn check_exponent(field: &str, alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(field, format!("{alpha} is not in (0, 1)")))
    }
}

fn off_cut(p: Complex64) -> Result<()> {
    if !(p.re.is_finite() && p.im.is_finite()) {
        return Err(Error::domain("p", "non-finite"));
    }
    if p.im == 0.0 && p.re <= 0.0 {
        return Err(Error::domain("p", format!("{p} lies on the cut (-inf, 0]")));
    }
    Ok(())
}

fn finite_c(v: Complex64, what: &'static str) -> Result<Complex64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { what })
    }
}

fn finite(v: f64, what: &'static str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { what })
    }
}

impl KernelSymbol {
    pub fn power_law(alpha: f64) -> Result<Self> {
        check_exponent("alpha", alpha)?;
        Ok(KernelSymbol::PowerLaw { alpha })
    }

    /// Mixture from `(weight, exponent)` pairs.
    pub fn mixture(terms: &[(f64, f64)]) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::invalid("weights", "mixture needs at least one term"));
        }
        let mut out = Vec::with_capacity(terms.len());
        for &(weight, exponent) in terms {
            if !(weight.is_finite() && weight > 0.0) {
                return Err(Error::invalid("weights", format!("{weight} must be > 0")));
            }
            check_exponent("exponents", exponent)?;
            out.push(MixtureTerm { weight, exponent });
        }
        Ok(KernelSymbol::Mixture(out))
    }

    pub fn distributed_order(order: DistributedOrder) -> Self {
        KernelSymbol::DistributedOrder(order)
    }

    pub fn from_measure(measure: StieltjesMeasure) -> Self {
        KernelSymbol::FromMeasure(measure)
    }

    /// Short human-readable label.
    pub fn label(&self) -> String {
        match self {
            KernelSymbol::PowerLaw { alpha } => format!("power_law(alpha={alpha})"),
            KernelSymbol::Mixture(terms) => {
                let parts: Vec<String> = terms.iter().map(|m| format!("{}*p^{}", m.weight, m.exponent)).collect();
                format!("mixture({})", parts.join(" + "))
            }
            KernelSymbol::DistributedOrder(d) => match &d.weight {
                OrderWeight::Samples(s) if s.len() == 1 => format!("distributed_order(mu={})", s[0]),
                OrderWeight::Samples(s) => format!("distributed_order(mu_nodes={s:?})"),
                OrderWeight::Function => "distributed_order(mu=fn)".to_string(),
            },
            KernelSymbol::FromMeasure(m) => {
                format!("measure({} atoms, {} density nodes)", m.atoms.len(), m.density_nodes.len())
            }
        }
    }

    /// Φ(p) on the cut plane ℂ \ (-∞, 0], principal branch.
    pub fn phi(&self, p: Complex64) -> Result<Complex64> {
        off_cut(p)?;
        finite_c(self.phi_unchecked(p), "phi")
    }

    /// Φ(p) for real p > 0.
    pub fn phi_real(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::domain("p", format!("{p} must be positive")));
        }
        finite(self.phi_real_unchecked(p), "phi")
    }

    /// Φ′(p) for real p > 0, from the analytic derivative of each kind.
    pub fn phi_prime(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::domain("p", format!("{p} must be positive")));
        }
        let v = match self {
            KernelSymbol::PowerLaw { alpha } => alpha * p.powf(alpha - 1.0),
            KernelSymbol::Mixture(terms) => {
                terms.iter().map(|m| m.weight * m.exponent * p.powf(m.exponent - 1.0)).sum()
            }
            KernelSymbol::DistributedOrder(d) => {
                let lp = p.ln();
                d.nodes.iter().map(|&(a, w)| w * a * ((a - 1.0) * lp).exp()).sum()
            }
            KernelSymbol::FromMeasure(m) => m.points().map(|(t, w)| w * t / ((p + t) * (p + t))).sum(),
        };
        finite(v, "phi_prime")
    }

    /// K(p) = Φ(p)/p, the Laplace transform of k.
    pub fn laplace_k(&self, p: Complex64) -> Result<Complex64> {
        off_cut(p)?;
        finite_c(self.laplace_k_unchecked(p), "laplace_k")
    }

    /// k(s) = ∫ e^{-ts} σ(dt), the kernel itself.
    pub fn kernel_k(&self, s: f64) -> Result<f64> {
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::domain("s", format!("{s} must be positive")));
        }
        let v = match self {
            KernelSymbol::PowerLaw { alpha } => s.powf(-alpha) * rgamma(1.0 - alpha),
            KernelSymbol::Mixture(terms) => {
                terms.iter().map(|m| m.weight * s.powf(-m.exponent) * rgamma(1.0 - m.exponent)).sum()
            }
            KernelSymbol::DistributedOrder(d) => {
                let ls = s.ln();
                d.nodes.iter().map(|&(a, w)| w * (-a * ls).exp() * rgamma(1.0 - a)).sum()
            }
            KernelSymbol::FromMeasure(m) => m.points().map(|(t, w)| w * (-t * s).exp()).sum(),
        };
        finite(v, "kernel_k")
    }

    /// K₁(t) = ∫₀ᵗ k(s) ds.
    pub fn cumulative_kernel(&self, t: f64) -> Result<f64> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::domain("t", format!("{t} must be positive")));
        }
        finite(self.cumulative_unchecked(t), "cumulative_kernel")
    }

    pub(crate) fn cumulative_unchecked(&self, t: f64) -> f64 {
        match self {
            KernelSymbol::PowerLaw { alpha } => t.powf(1.0 - alpha) * rgamma(2.0 - alpha),
            KernelSymbol::Mixture(terms) => {
                terms.iter().map(|m| m.weight * t.powf(1.0 - m.exponent) * rgamma(2.0 - m.exponent)).sum()
            }
            KernelSymbol::DistributedOrder(d) => {
                let lt = t.ln();
                d.nodes.iter().map(|&(a, w)| w * ((1.0 - a) * lt).exp() * rgamma(2.0 - a)).sum()
            }
            KernelSymbol::FromMeasure(m) => {
                m.points().map(|(loc, w)| if loc == 0.0 { w * t } else { -w * (-t * loc).exp_m1() / loc }).sum()
            }
        }
    }

    pub(crate) fn phi_unchecked(&self, p: Complex64) -> Complex64 {
        match self {
            KernelSymbol::PowerLaw { alpha } => (p.ln() * alpha).exp(),
            KernelSymbol::Mixture(terms) => {
                let lp = p.ln();
                terms.iter().map(|m| (lp * m.exponent).exp() * m.weight).sum()
            }
            KernelSymbol::DistributedOrder(d) => {
                let lp = p.ln();
                d.nodes.iter().map(|&(a, w)| (lp * a).exp() * w).sum()
            }
            KernelSymbol::FromMeasure(m) => m.points().map(|(t, w)| p / (p + t) * w).sum(),
        }
    }

    pub(crate) fn phi_real_unchecked(&self, p: f64) -> f64 {
        match self {
            KernelSymbol::PowerLaw { alpha } => p.powf(*alpha),
            KernelSymbol::Mixture(terms) => terms.iter().map(|m| m.weight * p.powf(m.exponent)).sum(),
            KernelSymbol::DistributedOrder(d) => order_sum_real(&d.nodes, p),
            KernelSymbol::FromMeasure(m) => m.points().map(|(t, w)| w * p / (p + t)).sum(),
        }
    }

    pub(crate) fn laplace_k_unchecked(&self, p: Complex64) -> Complex64 {
        match self {
            KernelSymbol::FromMeasure(m) => m.points().map(|(t, w)| w / (p + t)).sum(),
            _ => self.phi_unchecked(p) / p,
        }
    }

    /// Runs the limit and integrability checks required of admissible kernels.
    pub fn check_admissibility(&self) -> AdmissibilityReport {
        admissibility::check(self)
    }

    /// Lower and upper bounds on |Φ(p)| from the complete-Bernstein sector inequality.
    pub fn sector_bounds(&self, p: Complex64) -> Result<(f64, f64)> {
        off_cut(p)?;
        let c = p.arg().cos();
        let modulus = self.phi_real(p.norm())?;
        Ok((((1.0 + c) / 2.0).sqrt() * modulus, (2.0 / (1.0 + c)).sqrt() * modulus))
    }
}

/// The admissible kernels shipped with the crate, with short names.
pub fn builtin_kernels() -> Vec<(&'static str, KernelSymbol)> {
    vec![
        ("power_law_0.3", KernelSymbol::PowerLaw { alpha: 0.3 }),
        ("power_law_0.5", KernelSymbol::PowerLaw { alpha: 0.5 }),
        ("power_law_0.7", KernelSymbol::PowerLaw { alpha: 0.7 }),
        ("mixture_1/2+1/3", KernelSymbol::mixture(&[(1.0, 0.5), (1.0, 1.0 / 3.0)]).expect("valid mixture")),
        ("distributed_order_uniform", KernelSymbol::DistributedOrder(DistributedOrder::uniform())),
    ]
}

/// A measure whose symbol approximates `Φ(p) = log(1+p)`, which satisfies the
/// limit conditions but not the integrability condition. Uses σ(dt) = dt/t on
/// (1, ∞) discretized in `y = log t` up to `t = e^700`.
pub fn log_symbol_measure() -> StieltjesMeasure {
    const SPAN: f64 = 700.0;
    const NODES: usize = 7000;
    let h = SPAN / NODES as f64;
    let density = (0..NODES).map(|j| (((j as f64 + 0.5) * h).exp(), h)).collect();
    StieltjesMeasure::new(Vec::new(), density).expect("valid log measure")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn uniform_order() -> KernelSymbol {
        KernelSymbol::DistributedOrder(DistributedOrder::uniform())
    }

    #[test]
    fn phi_examples() {
        let pl = KernelSymbol::power_law(0.5).unwrap();
        assert!((pl.phi(c(4.0)).unwrap().re - 2.0).abs() < 1e-15);

        // ∫₀¹ p^α dα = (p - 1)/ln p
        let got = uniform_order().phi(c(E)).unwrap();
        assert!((got.re - (E - 1.0)).abs() < 1e-14, "{got}");
        assert!(got.im.abs() < 1e-15);

        let atom = KernelSymbol::from_measure(StieltjesMeasure::atom(1.0, 1.0).unwrap());
        assert!((atom.phi(c(1.0)).unwrap().re - 0.5).abs() < 1e-16);
    }

    #[test]
    fn phi_rejects_the_cut() {
        let pl = KernelSymbol::power_law(0.5).unwrap();
        assert!(matches!(pl.phi(c(-1.0)), Err(Error::Domain { .. })));
        assert!(matches!(pl.phi(c(0.0)), Err(Error::Domain { .. })));
        assert!(pl.phi(Complex64::new(-1.0, 1e-12)).is_ok());
    }

    #[test]
    fn distributed_order_complex_matches_closed_form() {
        let p = Complex64::new(-2.0, 3.0);
        let expected = (p - 1.0) / p.ln();
        let got = uniform_order().phi(p).unwrap();
        assert!((got - expected).norm() < 1e-13 * expected.norm());
    }

    #[test]
    fn phi_prime_examples() {
        let pl = KernelSymbol::power_law(0.5).unwrap();
        assert!((pl.phi_prime(4.0).unwrap() - 0.25).abs() < 1e-15);
        let atom = KernelSymbol::from_measure(StieltjesMeasure::atom(1.0, 1.0).unwrap());
        assert!((atom.phi_prime(1.0).unwrap() - 0.25).abs() < 1e-16);
        // d/dp (p-1)/ln p = (ln p - (p-1)/p)/ln²p, which is 1/e at p = e
        let expected = 1.0 / E;
        assert!((uniform_order().phi_prime(E).unwrap() - expected).abs() < 1e-13);
        let h = 1e-5;
        let central = (uniform_order().phi_real(E + h).unwrap() - uniform_order().phi_real(E - h).unwrap()) / (2.0 * h);
        assert!((central - expected).abs() < 1e-9);
        assert!(matches!(pl.phi_prime(0.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn laplace_k_examples() {
        let k = |sym: &KernelSymbol, p: f64| sym.laplace_k(c(p)).unwrap().re;
        assert!((k(&KernelSymbol::power_law(0.5).unwrap(), 4.0) - 0.5).abs() < 1e-15);
        assert!((k(&KernelSymbol::power_law(0.3).unwrap(), 1.0) - 1.0).abs() < 1e-15);
        let atom = KernelSymbol::from_measure(StieltjesMeasure::atom(1.0, 1.0).unwrap());
        assert!((k(&atom, 1.0) - 0.5).abs() < 1e-16);
        assert!(atom.laplace_k(c(0.0)).is_err());
    }

    #[test]
    fn kernel_k_examples() {
        let pl = KernelSymbol::power_law(0.5).unwrap();
        let inv_sqrt_pi = 1.0 / std::f64::consts::PI.sqrt();
        assert!((pl.kernel_k(1.0).unwrap() - inv_sqrt_pi).abs() < 1e-15);
        assert!((pl.kernel_k(4.0).unwrap() - 0.5 * inv_sqrt_pi).abs() < 1e-15);
        let origin = KernelSymbol::from_measure(StieltjesMeasure::atom(0.0, 1.0).unwrap());
        assert_eq!(origin.kernel_k(123.0).unwrap(), 1.0);
        assert!(matches!(pl.kernel_k(0.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn cumulative_kernel_limits() {
        let origin = KernelSymbol::from_measure(StieltjesMeasure::atom(0.0, 1.0).unwrap());
        assert_eq!(origin.cumulative_kernel(2.0).unwrap(), 2.0);
        let atom = KernelSymbol::from_measure(StieltjesMeasure::atom(2.0, 3.0).unwrap());
        let expected = 3.0 * (1.0 - (-2.0f64).exp()) / 2.0;
        assert!((atom.cumulative_kernel(1.0).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn constructors_validate() {
        assert!(KernelSymbol::power_law(1.5).is_err());
        assert!(KernelSymbol::power_law(0.0).is_err());
        assert!(KernelSymbol::mixture(&[(1.0, 0.5), (-1.0, 0.2)]).is_err());
        assert!(KernelSymbol::mixture(&[]).is_err());
        assert!(StieltjesMeasure::atom(-1.0, 1.0).is_err());
        assert!(StieltjesMeasure::atom(1.0, 0.0).is_err());
        assert!(DistributedOrder::from_samples(vec![0.0]).is_err());
        assert!(DistributedOrder::from_samples(vec![1.0, -3.0]).is_err());
    }

    #[test]
    fn smooth_weight_keeps_full_precision() {
        let d = DistributedOrder::uniform();
        assert!(!d.is_reduced_precision());
        let d = DistributedOrder::from_samples(vec![0.5, 2.0, 1.0]).unwrap();
        assert!(!d.is_reduced_precision());
        // a kink in μ slows Gauss–Legendre convergence
        let kinked = DistributedOrder::from_fn(|a| (a - 0.5).abs()).unwrap();
        assert!(kinked.is_reduced_precision());
    }

    #[test]
    fn interpolant_reproduces_linear_weight() {
        let d = DistributedOrder::from_samples(vec![0.0, 2.0]).unwrap();
        // μ(α) = 2α: Φ(e) = 2 ∫ α e^α dα = 2
        let v = KernelSymbol::DistributedOrder(d).phi_real(E).unwrap();
        assert!((v - 2.0).abs() < 1e-14, "{v}");
    }

    #[test]
    fn sector_bounds_bracket_modulus() {
        let pl = KernelSymbol::power_law(0.7).unwrap();
        let p = Complex64::from_polar(3.0, 2.5);
        let (lo, hi) = pl.sector_bounds(p).unwrap();
        let m = pl.phi(p).unwrap().norm();
        assert!(lo <= m && m <= hi);
    }

    #[test]
    fn log_measure_tracks_log_symbol() {
        let sym = KernelSymbol::from_measure(log_symbol_measure());
        for &p in &[0.5, 3.0, 1e4] {
            let v = sym.phi_real(p).unwrap();
            assert!((v - (1.0f64 + p).ln()).abs() < 1e-3 * (1.0f64 + p).ln(), "p = {p}: {v}");
        }
    }
}
