//! Driving the command line from code, as the `gfc` binary does.

fn main() {
    let args = ["gfc", "asymptote", "--kernel", "kind=power_law;alpha=0.5", "--lambda", "2", "--format", "csv"];
    let mut out = Vec::new();
    let code = gfc_growth::cli::run(args, &mut out, &mut std::io::stderr());
    print!("{}", String::from_utf8_lossy(&out));
    println!("exit status {code}");
}
