//! A slice of G(s, t) and the growth solution as its e^{lambda s} moment.

use gfc_growth::invert::{self, ContourSpec};
use gfc_growth::{subordination, KernelSymbol};

fn main() -> gfc_growth::Result<()> {
    let k = KernelSymbol::mixture(&[(1.0, 0.5), (1.0, 1.0 / 3.0)])?;
    let t = 1.0;
    let grid = subordination::default_s_grid(&k, t)?;
    let slice = subordination::subordination_kernel(&k, t, &grid)?;
    for (s, g) in slice.s_grid.iter().zip(&slice.g_values).step_by(20) {
        println!("G({s:.4e}, {t}) = {g:.10e}");
    }
    println!("mass {:.10}, min {:.3e}, clamped {}", slice.mass, slice.min_value, slice.clamped);

    let u = subordination::growth_via_subordination(&k, 1.0, t)?;
    let reference = invert::solve_growth(&k, 1.0, &[t], &ContourSpec::default())?.values[0];
    println!("u({t}) = {u:.14} (contour {reference:.14})");
    Ok(())
}
