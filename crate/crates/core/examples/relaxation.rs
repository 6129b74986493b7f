//! Relaxation D u = -lambda u for several kernels; u is completely monotone.

use gfc_growth::builtin_kernels;
use gfc_growth::invert::{self, ContourSpec};

fn main() -> gfc_growth::Result<()> {
    let times = [0.01, 0.1, 1.0, 10.0, 100.0];
    print!("{:<28}", "kernel");
    for t in times {
        print!(" {:>12}", format!("t={t}"));
    }
    println!();
    for (name, k) in builtin_kernels() {
        print!("{name:<28}");
        for u in invert::solve_relaxation(&k, 1.0, &times, &ContourSpec::default())? {
            print!(" {u:>12.6e}");
        }
        println!();
    }
    Ok(())
}
