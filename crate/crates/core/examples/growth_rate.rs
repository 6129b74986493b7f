//! The growth rate p0 with phi(p0) = lambda, the amplitude of e^{p0 t}, and
//! superadditivity of lambda -> p0.

use gfc_growth::{builtin_kernels, rootfind};

fn main() -> gfc_growth::Result<()> {
    for (name, k) in builtin_kernels() {
        println!("{name}");
        for lambda in [0.1, 1.0, 10.0] {
            let a = rootfind::asymptote(&k, lambda)?;
            println!("  lambda {lambda:>5}: p0 = {:<22.15e} A = {:.12}", a.p0, a.amplitude);
        }
        let (x, y) = (0.7, 2.3);
        println!("  p0(x+y) > p0(x)+p0(y) at ({x}, {y}): {}", rootfind::superadditivity_check(&k, x, y)?);
    }
    Ok(())
}
