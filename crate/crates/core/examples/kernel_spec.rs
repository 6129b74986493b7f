//! Parsing kernel specifications and rendering them back.

use gfc_growth::kernel::spec;

fn main() -> gfc_growth::Result<()> {
    let texts = [
        "kind = power_law\nalpha = 0.25",
        "kind = mixture; weights = 1, 2; exponents = 0.5, 0.2",
        "kind = distributed_order\nmu_nodes = 1, 2, 1   # bump in the middle",
        "kind = measure; measure_atoms = 0:0.5, 1:1; measure_density = 4:0.25",
    ];
    for text in texts {
        let k = spec::parse(text)?;
        println!("{}", k.label());
        println!("  phi(2) = {:.12}", k.phi_real(2.0)?);
        print!("{}", spec::render(&k)?.lines().map(|l| format!("  | {l}\n")).collect::<String>());
    }
    match spec::parse("kind = power_law; alpha = 1.5") {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
