//! Growth solution by contour inversion: the residue at p0 plus a decaying
//! remainder, checked against the Bromwich line and the Mittag-Leffler oracle.

use gfc_growth::invert::{self, ContourSpec, Mode, Rule};
use gfc_growth::{mlf, KernelSymbol};

fn main() -> gfc_growth::Result<()> {
    let k = KernelSymbol::power_law(0.5)?;
    let times = [0.1, 1.0, 5.0, 25.0, 1000.0];
    let spec = ContourSpec::default();
    let split = invert::solve_growth(&k, 1.0, &times, &spec)?;
    let line = invert::solve_growth_with(&k, 1.0, &times[..4], &spec, Mode::Bromwich)?;
    println!("p0 = {}, A = {}", split.p0, split.amplitude);
    println!("{:>8} {:>24} {:>24} {:>12} {:>12}", "t", "u", "oracle", "e^-p0t u", "V e^-p0t");
    for (i, &t) in times[..4].iter().enumerate() {
        let oracle = mlf::mittag_leffler_default(0.5, t.sqrt())?;
        println!(
            "{t:>8} {:>24.16e} {oracle:>24.16e} {:>12.9} {:>12.3e}",
            split.values[i],
            split.normalized[i],
            split.remainders[i] * (-split.p0 * t).exp()
        );
    }
    println!("t = 1000 overflows; log u = {:.12}", split.log_values[4]);
    println!("bromwich at t = 5: {:.16e}", line.values[2]);

    let trapezoid = ContourSpec { rule: Rule::Trapezoid, ..ContourSpec::default() };
    let v = invert::solve_growth(&k, 1.0, &[2.0], &trapezoid)?.values[0];
    println!("trapezoid rule at t = 2: {v:.16e}");
    Ok(())
}
