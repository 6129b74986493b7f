//! Every solution route for the uniform distributed-order kernel, which has
//! no closed form.

use gfc_growth::invert::{self, ContourSpec, Mode};
use gfc_growth::timestep::{self, MeshSpec};
use gfc_growth::{subordination, DistributedOrder, KernelSymbol};

fn main() -> gfc_growth::Result<()> {
    let k = KernelSymbol::distributed_order(DistributedOrder::uniform());
    let lambda = 1.0;
    let times = [0.25, 0.5, 1.0, 2.0];
    let spec = ContourSpec::default();
    let split = invert::solve_growth(&k, lambda, &times, &spec)?;
    let line = invert::solve_growth_with(&k, lambda, &times, &spec, Mode::Bromwich)?;
    let direct = timestep::solve_growth_direct(&k, lambda, &MeshSpec::new(2.0, 4096, 2.0)?)?;
    println!("{:>5} {:>20} {:>20} {:>20} {:>20}", "t", "residue split", "bromwich", "subordination", "direct");
    for (i, &t) in times.iter().enumerate() {
        println!(
            "{t:>5} {:>20.14} {:>20.14} {:>20.14} {:>20.14}",
            split.values[i],
            line.values[i],
            subordination::growth_via_subordination(&k, lambda, t)?,
            direct.value_at(t)?
        );
    }
    Ok(())
}
