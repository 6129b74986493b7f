use std::f64::consts::PI;

use gfc_growth::kernel::{log_symbol_measure, StieltjesMeasure};
use gfc_growth::{builtin_kernels, quad, rootfind, KernelSymbol};
use num_complex::Complex64;
use proptest::prelude::*;

fn kernel_index() -> impl Strategy<Value = usize> {
    0..builtin_kernels().len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn phi_is_increasing(i in kernel_index(), a in -6.0f64..6.0, b in -6.0f64..6.0) {
        prop_assume!(a != b);
        let (p1, p2) = (10f64.powf(a.min(b)), 10f64.powf(a.max(b)));
        let (_, symbol) = &builtin_kernels()[i];
        prop_assert!(symbol.phi_real(p1).unwrap() < symbol.phi_real(p2).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn sector_inequality(i in kernel_index(), log_modulus in -6.0f64..6.0, angle in -0.999_999f64..0.999_999) {
        let (_, symbol) = &builtin_kernels()[i];
        let p = Complex64::from_polar(10f64.powf(log_modulus), PI * angle);
        let (lo, hi) = symbol.sector_bounds(p).unwrap();
        let v = symbol.phi(p).unwrap().norm();
        prop_assert!(v >= lo * (1.0 - 1e-10) && v <= hi * (1.0 + 1e-10), "{v} not in [{lo}, {hi}]");
    }
}

/// Φ at the smallest normal double. Below it p₀ is not representable; the
/// uniform distributed order reaches this at λ ≈ 1.4e-3.
fn representable(symbol: &KernelSymbol, lambda: f64) -> bool {
    lambda > symbol.phi_real(f64::MIN_POSITIVE).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn root_residual(i in kernel_index(), e in -3.0f64..3.0) {
        let lambda = 10f64.powf(e);
        let (_, symbol) = &builtin_kernels()[i];
        prop_assume!(representable(symbol, lambda));
        let root = rootfind::p0_of_lambda(symbol, lambda).unwrap();
        let residual = (symbol.phi_real(root.p0).unwrap() - lambda).abs();
        prop_assert!(residual <= 1e-12 * lambda.max(1.0), "residual {residual:e}");
    }

    #[test]
    fn root_is_increasing(i in kernel_index(), a in -3.0f64..3.0, b in -3.0f64..3.0) {
        prop_assume!(a != b);
        let (_, symbol) = &builtin_kernels()[i];
        prop_assume!(representable(symbol, 10f64.powf(a.min(b))));
        let p = |e: f64| rootfind::p0_of_lambda(symbol, 10f64.powf(e)).unwrap().p0;
        prop_assert!(p(a.min(b)) < p(a.max(b)));
    }

    #[test]
    fn power_law_scale_identity(alpha in 0.05f64..0.95, e in -3.0f64..3.0) {
        let lambda = 10f64.powf(e);
        let p0 = rootfind::p0_of_lambda(&KernelSymbol::power_law(alpha).unwrap(), lambda).unwrap().p0;
        let exact = lambda.powf(1.0 / alpha);
        prop_assert!(((p0 - exact) / exact).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn superadditivity(i in kernel_index(), x in 1e-3f64..100.0, y in 1e-3f64..100.0) {
        let (_, symbol) = &builtin_kernels()[i];
        prop_assert!(rootfind::superadditivity_check(symbol, x, y).unwrap());
    }
}

fn laplace_by_quadrature(symbol: &KernelSymbol, p: f64) -> f64 {
    let f = |t: f64| if t > 0.0 { (-p * t).exp() * symbol.kernel_k(t).unwrap() } else { 0.0 };
    quad::to_infinity(f, 0.0, 1.0 / p, 0.0, 1e-10, 1e6).unwrap().value
}

#[test]
fn kernel_and_symbol_are_a_laplace_pair() {
    let measure = StieltjesMeasure::new(vec![(1.0, 1.0), (0.0, 0.25)], vec![(3.0, 0.5), (0.2, 2.0)]).unwrap();
    let kernels = [
        KernelSymbol::power_law(0.3).unwrap(),
        KernelSymbol::power_law(0.5).unwrap(),
        KernelSymbol::power_law(0.7).unwrap(),
        KernelSymbol::from_measure(measure),
    ];
    for symbol in &kernels {
        for p in [0.5, 1.0, 5.0] {
            let exact = symbol.laplace_k(Complex64::new(p, 0.0)).unwrap().re;
            let v = laplace_by_quadrature(symbol, p);
            assert!(((v - exact) / exact).abs() <= 1e-6, "{} at p = {p}: {v} vs {exact}", symbol.label());
        }
    }
}

#[test]
fn kernel_is_completely_monotone() {
    let times: Vec<f64> = (0..120).map(|i| 10f64.powf(-2.0 + 3.0 * i as f64 / 119.0)).collect();
    for (name, symbol) in builtin_kernels() {
        let mut d: Vec<f64> = times.iter().map(|&t| symbol.kernel_k(t).unwrap()).collect();
        for order in 1..=4 {
            d = (0..d.len() - 1).map(|i| (d[i + 1] - d[i]) / (times[i + order] - times[i])).collect();
            let sign = if order % 2 == 1 { -1.0 } else { 1.0 };
            assert!(d.iter().all(|v| sign * v > 0.0), "{name}: order {order}");
        }
    }
}

#[test]
fn condition_value_is_finite_exactly_when_satisfied() {
    let mut kernels: Vec<KernelSymbol> = builtin_kernels().into_iter().map(|k| k.1).collect();
    kernels.push(KernelSymbol::from_measure(StieltjesMeasure::atom(1.0, 1.0).unwrap()));
    kernels.push(KernelSymbol::from_measure(log_symbol_measure()));
    for symbol in &kernels {
        let report = symbol.check_admissibility();
        assert_eq!(report.condition_16_value.is_some_and(f64::is_finite), report.condition_16_ok, "{}", symbol.label());
    }
}
