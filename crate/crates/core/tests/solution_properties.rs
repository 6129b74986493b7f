use gfc_growth::invert::{self, ContourSpec, Mode};
use gfc_growth::timestep::{self, MeshSpec};
use gfc_growth::{builtin_kernels, mlf, rootfind, subordination, KernelSymbol};
use proptest::prelude::*;

fn power(alpha: f64) -> KernelSymbol {
    KernelSymbol::power_law(alpha).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn residue_split_and_bromwich_agree(k in 0usize..3, t in 0.1f64..5.0) {
        let symbol = power([0.3, 0.5, 0.7][k]);
        let spec = ContourSpec::default();
        let split = invert::solve_growth_with(&symbol, 1.0, &[t], &spec, Mode::ResidueSplit).unwrap();
        let line = invert::solve_growth_with(&symbol, 1.0, &[t], &spec, Mode::Bromwich).unwrap();
        prop_assert!(rel(split.values[0], line.values[0]) < 1e-8);
    }

    #[test]
    fn contour_matches_mittag_leffler(k in 0usize..3, l in 0usize..3, e in -1.0f64..1.0) {
        let (alpha, lambda, t) = ([0.3, 0.5, 0.7][k], [0.5, 1.0, 2.0][l], 10f64.powf(e));
        let u = invert::solve_growth(&power(alpha), lambda, &[t], &ContourSpec::default()).unwrap().values[0];
        let exact = mlf::mittag_leffler_default(alpha, lambda * t.powf(alpha)).unwrap();
        prop_assert!(rel(u, exact) <= 1e-6);
    }
}

#[test]
fn normalized_solution_approaches_amplitude() {
    for alpha in [0.3, 0.5, 0.7] {
        let symbol = power(alpha);
        let asym = rootfind::asymptote(&symbol, 1.0).unwrap();
        let t_far = 20.0 / asym.p0 * asym.p0.max(1.0);
        let times: Vec<f64> = (1..=20).map(|i| t_far * i as f64 / 20.0).collect();
        let sol = invert::solve_growth(&symbol, 1.0, &times, &ContourSpec::default()).unwrap();
        let gaps: Vec<f64> = sol.normalized.iter().map(|v| (v - asym.amplitude).abs()).collect();
        assert!(gaps[19] < 0.01 * asym.amplitude, "alpha {alpha}: {}", sol.normalized[19]);
        assert!(gaps[19] < gaps[0]);
    }
}

#[test]
fn growth_is_nondecreasing() {
    let times: Vec<f64> = (1..=100).map(|i| 0.05 * i as f64).collect();
    for (name, symbol) in builtin_kernels() {
        let sol = invert::solve_growth(&symbol, 1.0, &times, &ContourSpec::default()).unwrap();
        assert!(sol.values.windows(2).all(|w| w[1] >= w[0]), "{name}");
    }
}

#[test]
fn relaxation_differences_alternate_on_uniform_grid() {
    let times: Vec<f64> = (0..200).map(|i| 0.01 + (10.0 - 0.01) * i as f64 / 199.0).collect();
    for (name, symbol) in builtin_kernels() {
        let u = invert::solve_relaxation(&symbol, 1.0, &times, &ContourSpec::default()).unwrap();
        assert!(u.iter().all(|v| *v > 0.0), "{name}");
        let mut d = u;
        for order in 1..=3 {
            d = d.windows(2).map(|w| w[1] - w[0]).collect();
            let sign = if order % 2 == 1 { -1.0 } else { 1.0 };
            assert!(d.iter().all(|v| sign * v >= 0.0), "{name}: order {order}");
        }
    }
}

#[test]
fn subordination_slices_are_normalized() {
    for (name, symbol) in builtin_kernels() {
        for t in [0.5, 1.0, 2.0] {
            let grid = subordination::default_s_grid(&symbol, t).unwrap();
            let slice = subordination::subordination_kernel(&symbol, t, &grid).unwrap();
            assert!((slice.mass - 1.0).abs() <= 1e-6, "{name}, t = {t}: mass {}", slice.mass);
            assert!(slice.min_value >= -1e-8, "{name}, t = {t}");
        }
    }
}

#[test]
fn subordination_matches_contour() {
    for (name, symbol) in builtin_kernels() {
        let times = [0.5, 1.0, 2.0];
        let sol = invert::solve_growth(&symbol, 1.0, &times, &ContourSpec::default()).unwrap();
        for (i, &t) in times.iter().enumerate() {
            let v = subordination::growth_via_subordination(&symbol, 1.0, t).unwrap();
            assert!(rel(v, sol.values[i]) <= 1e-4, "{name}, t = {t}");
        }
    }
}

#[test]
fn direct_solver_matches_contour() {
    let mesh = MeshSpec::new(1.0, 4096, 2.0).unwrap();
    let times = [0.25, 0.5, 1.0];
    for (name, symbol) in builtin_kernels() {
        let direct = timestep::solve_growth_direct(&symbol, 1.0, &mesh).unwrap();
        let contour = invert::solve_growth(&symbol, 1.0, &times, &ContourSpec::default()).unwrap();
        for (i, &t) in times.iter().enumerate() {
            assert!(rel(direct.value_at(t).unwrap(), contour.values[i]) <= 1e-2, "{name}, t = {t}");
        }
    }
}

#[test]
fn direct_solver_converges_under_refinement() {
    let exact = mlf::mittag_leffler_default(0.5, 1.0).unwrap();
    let errors: Vec<f64> = [1024, 4096, 16384]
        .iter()
        .map(|&n| {
            let sol = timestep::solve_growth_direct(&power(0.5), 1.0, &MeshSpec::new(1.0, n, 2.0).unwrap()).unwrap();
            rel(*sol.values.last().unwrap(), exact)
        })
        .collect();
    assert!(errors[1] < errors[0] && errors[2] < errors[1], "{errors:?}");
}

#[test]
fn direct_relaxation_stays_in_unit_interval() {
    let mesh = MeshSpec::new(5.0, 1024, 2.0).unwrap();
    for (name, symbol) in builtin_kernels() {
        let sol = timestep::solve_relaxation_direct(&symbol, 1.0, &mesh).unwrap();
        assert!(sol.values.iter().all(|v| *v > 0.0 && *v <= 1.0), "{name}");
        assert!(sol.values.windows(2).all(|w| w[1] <= w[0]), "{name}");
    }
}
