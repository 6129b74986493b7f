//! E_alpha(z) across the series, asymptotic and integral regimes.

use gfc_growth::mlf;

fn main() -> gfc_growth::Result<()> {
    for alpha in [0.3, 0.5, 0.7, 0.9] {
        print!("alpha {alpha}:");
        for z in [-10.0, -1.0, 0.0, 1.0, 2.0, 5.0] {
            print!(" {:.10e}", mlf::mittag_leffler_default(alpha, z)?);
        }
        println!();
    }
    // E_0.3(20) ~ e^{20^{1/0.3}} is past the double range
    if let Err(e) = mlf::mittag_leffler_default(0.3, 20.0) {
        println!("E_0.3(20): {e}");
    }
    // E_{1/2}(z) = e^{z^2} erfc(-z)
    let z: f64 = 1.5;
    let closed = (z * z).exp() * gfc_growth::special::erfc(-z);
    println!("E_1/2(1.5) = {:.16} (closed form {closed:.16})", mlf::mittag_leffler_default(0.5, z)?);
    Ok(())
}
