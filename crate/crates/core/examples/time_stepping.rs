//! Product-integration time stepping on graded meshes, and its convergence
//! towards the Mittag-Leffler value.

use gfc_growth::timestep::{self, MeshSpec};
use gfc_growth::{mlf, KernelSymbol};

fn main() -> gfc_growth::Result<()> {
    let alpha = 0.3;
    let k = KernelSymbol::power_law(alpha)?;
    let exact = mlf::mittag_leffler_default(alpha, 1.0)?;
    for steps in [256, 1024, 4096] {
        for grading in [1.0, 2.0] {
            let sol = timestep::solve_growth_direct(&k, 1.0, &MeshSpec::new(1.0, steps, grading)?)?;
            let u = *sol.values.last().unwrap();
            println!("steps {steps:>5}, grading {grading}: u(1) = {u:.12}, rel err {:.2e}", (u / exact - 1.0).abs());
        }
    }
    let down = timestep::solve_relaxation_direct(&k, 1.0, &MeshSpec::new(10.0, 2048, 2.0)?)?;
    println!("relaxation u(5) = {:.10}, u(10) = {:.10}", down.value_at(5.0)?, down.value_at(10.0)?);
    Ok(())
}
