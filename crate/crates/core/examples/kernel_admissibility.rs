//! Admissibility reports for the built-in kernels and two that fail.

use gfc_growth::kernel::{log_symbol_measure, StieltjesMeasure};
use gfc_growth::{builtin_kernels, KernelSymbol};

fn main() {
    let mut kernels: Vec<(String, KernelSymbol)> =
        builtin_kernels().into_iter().map(|(name, k)| (name.to_string(), k)).collect();
    kernels.push(("single atom".into(), KernelSymbol::from_measure(StieltjesMeasure::atom(1.0, 1.0).unwrap())));
    kernels.push(("log(1+p)".into(), KernelSymbol::from_measure(log_symbol_measure())));

    println!("{:<28} {:>7} {:>7} {:>7} {:>12}", "kernel", "lim5", "lim6", "cond16", "value");
    for (name, k) in &kernels {
        let r = k.check_admissibility();
        let value = r.condition_16_value.map_or("divergent".to_string(), |v| format!("{v:.6}"));
        println!("{name:<28} {:>7} {:>7} {:>7} {value:>12}", r.limits_5_ok, r.limits_6_ok, r.condition_16_ok);
    }
}
