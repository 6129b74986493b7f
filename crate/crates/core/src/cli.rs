//! The `gfc` command line front end.
//!
//! Exit status is 0 on success, 1 for input errors (bad flags, unreadable or
//! malformed kernel specs) and 2 when the mathematics refuses: an
//! inadmissible kernel, a root that cannot be bracketed, a failed quadrature.
//! Set `GFC_QUIET=1` to silence progress messages on standard error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::invert::{self, ContourSpec, Mode};
use crate::kernel::{self, spec, KernelSymbol};
use crate::mlf;
use crate::rootfind;
use crate::subordination;
use crate::timestep::{self, MeshSpec};

#[derive(Debug, Parser)]
#[command(name = "gfc", version, about = "Growth and relaxation equations with general fractional kernels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Admissibility checks for a kernel.
    Kernel {
        #[command(subcommand)]
        action: KernelAction,
    },
    /// Solve the growth equation on a time grid.
    Solve(SolveArgs),
    /// Growth rate p0 and amplitude of the leading exponential.
    Asymptote(AsymptoteArgs),
    /// A slice s -> G(s, t) of the subordination kernel.
    Subordinate(SubordinateArgs),
    /// Mittag-Leffler function E_alpha(z).
    Mlf(MlfArgs),
    /// All solution routes side by side, with the Mittag-Leffler oracle for power laws.
    Compare(CompareArgs),
}

#[derive(Debug, Subcommand)]
enum KernelAction {
    /// Print the admissibility report as JSON; exit 2 if any check fails.
    Check(KernelArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Method {
    Contour,
    Direct,
    Subordination,
    All,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Contour => "contour",
            Method::Direct => "direct",
            Method::Subordination => "subordination",
            Method::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args, Serialize)]
struct KernelArgs {
    /// Kernel spec: a file path, an inline spec containing '=', or a built-in name.
    #[arg(long)]
    kernel: String,
}

#[derive(Debug, Clone, Args, Serialize)]
struct OutputArgs {
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
struct GridArgs {
    #[arg(long)]
    lambda: f64,
    #[arg(long, default_value_t = 0.1)]
    t_min: f64,
    #[arg(long, default_value_t = 10.0)]
    t_max: f64,
    /// Number of log-spaced times in [t_min, t_max].
    #[arg(long, default_value_t = 50)]
    t_points: usize,
    /// Steps of the direct solver's graded mesh on [0, t_max].
    #[arg(long, default_value_t = 4096)]
    steps: usize,
    #[arg(long, default_value_t = 2.0)]
    grading: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
struct SolveArgs {
    #[command(flatten)]
    #[serde(flatten)]
    kernel: KernelArgs,
    #[command(flatten)]
    #[serde(flatten)]
    grid: GridArgs,
    #[arg(long, value_enum, default_value_t = Method::Contour)]
    method: Method,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(flatten)]
    #[serde(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
struct AsymptoteArgs {
    #[command(flatten)]
    #[serde(flatten)]
    kernel: KernelArgs,
    #[arg(long)]
    lambda: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(flatten)]
    #[serde(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
struct SubordinateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    kernel: KernelArgs,
    #[arg(long)]
    t: f64,
    /// Grid bounds; the default spans [1e-4, 50] times the scale 1/phi(1/t).
    #[arg(long, requires = "s_max")]
    s_min: Option<f64>,
    #[arg(long, requires = "s_min")]
    s_max: Option<f64>,
    #[arg(long, default_value_t = subordination::DEFAULT_GRID_POINTS)]
    s_points: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(flatten)]
    #[serde(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
struct MlfArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    z: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(flatten)]
    #[serde(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
struct CompareArgs {
    #[command(flatten)]
    #[serde(flatten)]
    kernel: KernelArgs,
    #[command(flatten)]
    #[serde(flatten)]
    grid: GridArgs,
    /// Largest accepted relative discrepancy between routes.
    #[arg(long, default_value_t = 1e-2)]
    tolerance: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(flatten)]
    #[serde(flatten)]
    output: OutputArgs,
}

/// Failure of a subcommand, sorted by exit status.
#[derive(Debug)]
enum Failure {
    Input(String),
    Refusal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Refusal(e.to_string())
        }
    }
}

type Outcome = std::result::Result<i32, Failure>;

fn input(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

struct Context<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    quiet: bool,
}

impl Context<'_> {
    fn progress(&mut self, msg: &str) {
        if !self.quiet {
            let _ = writeln!(self.err, "gfc: {msg}");
        }
    }

    fn emit(&mut self, target: &OutputArgs, text: &str) -> std::result::Result<(), Failure> {
        match &target.out {
            Some(path) => {
                std::fs::write(path, text).map_err(|e| input(format!("cannot write {}: {e}", path.display())))
            }
            None => self.out.write_all(text.as_bytes()).map_err(|e| input(format!("cannot write output: {e}"))),
        }
    }
}

/// Runs the command line with `args` (program name first) and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    let quiet = std::env::var("GFC_QUIET").is_ok_and(|v| v == "1");
    let mut ctx = Context { out, err, quiet };
    let outcome = match &cli.command {
        Command::Kernel { action: KernelAction::Check(a) } => kernel_check(&mut ctx, a),
        Command::Solve(a) => solve(&mut ctx, a),
        Command::Asymptote(a) => asymptote(&mut ctx, a),
        Command::Subordinate(a) => subordinate(&mut ctx, a),
        Command::Mlf(a) => mlf_value(&mut ctx, a),
        Command::Compare(a) => compare(&mut ctx, a),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(ctx.err, "error: {msg}");
            1
        }
        Err(Failure::Refusal(msg)) => {
            let _ = writeln!(ctx.err, "refused: {msg}");
            2
        }
    }
}

/// Resolves `--kernel`: inline text if it contains '=', else a file, else a built-in name.
fn load_kernel(text: &str) -> std::result::Result<KernelSymbol, Failure> {
    if text.contains('=') {
        return Ok(spec::parse(text)?);
    }
    let path = std::path::Path::new(text);
    if path.is_file() {
        let body = std::fs::read_to_string(path).map_err(|e| input(format!("cannot read {text}: {e}")))?;
        return Ok(spec::parse(&body)?);
    }
    kernel::builtin_kernels()
        .into_iter()
        .find(|(name, _)| *name == text)
        .map(|(_, symbol)| symbol)
        .ok_or_else(|| input(format!("invalid kernel: '{text}' is neither a spec, a file nor a built-in name")))
}

/// Resolved kernel for the JSON config: the spec text when it has one.
fn resolved_kernel(symbol: &KernelSymbol) -> String {
    spec::render(symbol).unwrap_or_else(|_| symbol.label())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Serialize)]
struct Config<'a, A: Serialize> {
    command: &'a str,
    #[serde(flatten)]
    args: &'a A,
    #[serde(skip_serializing_if = "Option::is_none")]
    kernel_resolved: Option<String>,
}

fn kernel_check(ctx: &mut Context, a: &KernelArgs) -> Outcome {
    #[derive(Serialize)]
    struct Out<'a> {
        config: Config<'a, KernelArgs>,
        kernel: String,
        #[serde(flatten)]
        report: kernel::AdmissibilityReport,
    }
    let symbol = load_kernel(&a.kernel)?;
    ctx.progress(&format!("checking {}", symbol.label()));
    let report = symbol.check_admissibility();
    let ok = report.all_ok();
    let out = Out {
        config: Config { command: "kernel check", args: a, kernel_resolved: Some(resolved_kernel(&symbol)) },
        kernel: symbol.label(),
        report,
    };
    let text = to_json(&out);
    ctx.out.write_all(text.as_bytes()).map_err(|e| input(format!("cannot write output: {e}")))?;
    Ok(if ok { 0 } else { 2 })
}

fn time_grid(g: &GridArgs) -> std::result::Result<Vec<f64>, Failure> {
    if !(g.t_min.is_finite() && g.t_min > 0.0) {
        return Err(input(format!("invalid t-min: {} must be positive", g.t_min)));
    }
    if !(g.t_max.is_finite() && g.t_max > g.t_min) {
        return Err(input(format!("invalid t-max: {} must exceed t-min", g.t_max)));
    }
    if g.t_points < 2 {
        return Err(input("invalid t-points: need at least 2"));
    }
    if !(g.lambda.is_finite() && g.lambda > 0.0) {
        return Err(input(format!("invalid lambda: {} must be positive", g.lambda)));
    }
    let (lo, hi) = (g.t_min.ln(), g.t_max.ln());
    let n = g.t_points;
    let mut t: Vec<f64> = (0..n).map(|i| (lo + (hi - lo) * i as f64 / (n - 1) as f64).exp()).collect();
    t[0] = g.t_min;
    t[n - 1] = g.t_max;
    Ok(t)
}

fn direct_route(symbol: &KernelSymbol, g: &GridArgs, times: &[f64]) -> std::result::Result<Vec<f64>, Failure> {
    let mesh = MeshSpec::new(g.t_max, g.steps, g.grading)?;
    let sol = timestep::solve_growth_direct(symbol, g.lambda, &mesh)?;
    Ok(times.iter().map(|&t| sol.value_at(t)).collect::<crate::Result<Vec<_>>>()?)
}

fn subordination_route(symbol: &KernelSymbol, lambda: f64, times: &[f64]) -> std::result::Result<Vec<f64>, Failure> {
    Ok(times
        .par_iter()
        .map(|&t| subordination::growth_via_subordination(symbol, lambda, t))
        .collect::<crate::Result<Vec<_>>>()?)
}

fn max_rel_discrepancy(values: &[f64]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            worst = worst.max(((a - b) / a.abs().max(b.abs())).abs());
        }
    }
    worst
}

#[derive(Serialize)]
struct SolveRow {
    t: f64,
    u: f64,
    normalized: f64,
    method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    u_contour: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    u_direct: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    u_subordination: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_rel_discrepancy: Option<f64>,
}

fn solve(ctx: &mut Context, a: &SolveArgs) -> Outcome {
    let symbol = load_kernel(&a.kernel.kernel)?;
    let times = time_grid(&a.grid)?;
    let lambda = a.grid.lambda;
    let asym = rootfind::asymptote(&symbol, lambda)?;
    let normalize = |t: f64, u: f64| u * (-asym.p0 * t).exp();
    let method = a.method.name();
    ctx.progress(&format!("solving {} points of {} by {method}", times.len(), symbol.label()));

    let contour = if matches!(a.method, Method::Contour | Method::All) {
        Some(invert::solve_growth(&symbol, lambda, &times, &ContourSpec::default())?)
    } else {
        None
    };
    let direct = if matches!(a.method, Method::Direct | Method::All) {
        Some(direct_route(&symbol, &a.grid, &times)?)
    } else {
        None
    };
    let subordinated = if matches!(a.method, Method::Subordination | Method::All) {
        Some(subordination_route(&symbol, lambda, &times)?)
    } else {
        None
    };

    let rows: Vec<SolveRow> = times
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let c = contour.as_ref().map(|s| s.values[i]);
            let d = direct.as_ref().map(|v| v[i]);
            let s = subordinated.as_ref().map(|v| v[i]);
            let (u, normalized) = match (&contour, a.method) {
                (Some(sol), _) => (sol.values[i], sol.normalized[i]),
                (None, Method::Direct) => (d.unwrap_or(f64::NAN), normalize(t, d.unwrap_or(f64::NAN))),
                _ => (s.unwrap_or(f64::NAN), normalize(t, s.unwrap_or(f64::NAN))),
            };
            let all = a.method == Method::All;
            SolveRow {
                t,
                u,
                normalized,
                method,
                u_contour: c.filter(|_| all),
                u_direct: d.filter(|_| all),
                u_subordination: s.filter(|_| all),
                max_rel_discrepancy: all.then(|| max_rel_discrepancy(&[c, d, s].map(|v| v.unwrap_or(f64::NAN)))),
            }
        })
        .collect();

    let text = match a.format {
        Format::Csv => {
            let mut s = String::from("t,u,normalized,method");
            if a.method == Method::All {
                s.push_str(",u_contour,u_direct,u_subordination,max_rel_discrepancy");
            }
            s.push('\n');
            for r in &rows {
                let _ = write!(s, "{},{},{},{}", num(r.t), num(r.u), num(r.normalized), r.method);
                if let (Some(c), Some(d), Some(sub), Some(m)) =
                    (r.u_contour, r.u_direct, r.u_subordination, r.max_rel_discrepancy)
                {
                    let _ = write!(s, ",{},{},{},{}", num(c), num(d), num(sub), num(m));
                }
                s.push('\n');
            }
            s
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                config: Config<'a, SolveArgs>,
                p0: f64,
                amplitude: f64,
                rows: &'a [SolveRow],
            }
            to_json(&Out {
                config: Config { command: "solve", args: a, kernel_resolved: Some(resolved_kernel(&symbol)) },
                p0: asym.p0,
                amplitude: asym.amplitude,
                rows: &rows,
            })
        }
    };
    ctx.emit(&a.output, &text)?;
    Ok(0)
}

fn asymptote(ctx: &mut Context, a: &AsymptoteArgs) -> Outcome {
    let symbol = load_kernel(&a.kernel.kernel)?;
    if !(a.lambda.is_finite() && a.lambda > 0.0) {
        return Err(input(format!("invalid lambda: {} must be positive", a.lambda)));
    }
    let asym = rootfind::asymptote(&symbol, a.lambda)?;
    let text = match a.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                config: Config<'a, AsymptoteArgs>,
                #[serde(flatten)]
                asymptote: rootfind::Asymptote,
            }
            to_json(&Out {
                config: Config { command: "asymptote", args: a, kernel_resolved: Some(resolved_kernel(&symbol)) },
                asymptote: asym,
            })
        }
        Format::Csv => format!(
            "lambda,p0,phi_prime_p0,amplitude\n{},{},{},{}\n",
            num(a.lambda),
            num(asym.p0),
            num(asym.phi_prime_p0),
            num(asym.amplitude)
        ),
    };
    ctx.emit(&a.output, &text)?;
    Ok(0)
}

fn subordinate(ctx: &mut Context, a: &SubordinateArgs) -> Outcome {
    let symbol = load_kernel(&a.kernel.kernel)?;
    let grid = match (a.s_min, a.s_max) {
        (Some(lo), Some(hi)) => {
            if !(lo > 0.0 && hi > lo && hi.is_finite()) || a.s_points < 2 {
                return Err(input("invalid s-grid: need 0 < s-min < s-max and s-points >= 2"));
            }
            let (l, h) = (lo.ln(), hi.ln());
            let n = a.s_points;
            (0..n).map(|i| (l + (h - l) * i as f64 / (n - 1) as f64).exp()).collect()
        }
        _ => subordination::default_s_grid(&symbol, a.t)?,
    };
    ctx.progress(&format!("inverting G(s, {}) at {} points", a.t, grid.len()));
    let slice = subordination::subordination_kernel(&symbol, a.t, &grid)?;
    let text = match a.format {
        Format::Csv => {
            let mut s = String::from("s,g\n");
            for (x, g) in slice.s_grid.iter().zip(&slice.g_values) {
                let _ = writeln!(s, "{},{}", num(*x), num(*g));
            }
            let _ =
                writeln!(s, "# mass={},min_value={},clamped={}", num(slice.mass), num(slice.min_value), slice.clamped);
            s
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                config: Config<'a, SubordinateArgs>,
                #[serde(flatten)]
                slice: &'a subordination::SubordinationSlice,
            }
            to_json(&Out {
                config: Config { command: "subordinate", args: a, kernel_resolved: Some(resolved_kernel(&symbol)) },
                slice: &slice,
            })
        }
    };
    ctx.emit(&a.output, &text)?;
    if (slice.mass - 1.0).abs() > 1e-6 {
        return Err(Failure::Refusal(format!("slice mass {} is not within 1e-6 of 1", slice.mass)));
    }
    Ok(0)
}

fn mlf_value(ctx: &mut Context, a: &MlfArgs) -> Outcome {
    let params = mlf::MLParams::new(a.alpha)?;
    let value = mlf::mittag_leffler(&params, a.z)?;
    let text = match a.format {
        Format::Csv => format!("alpha,z,value\n{},{},{}\n", num(a.alpha), num(a.z), num(value)),
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                config: Config<'a, MlfArgs>,
                value: f64,
            }
            to_json(&Out { config: Config { command: "mlf", args: a, kernel_resolved: None }, value })
        }
    };
    ctx.emit(&a.output, &text)?;
    Ok(0)
}

#[derive(Serialize)]
struct CompareRow {
    t: f64,
    residue_split: f64,
    bromwich: f64,
    direct: f64,
    subordination: f64,
    /// E_α(λt^α) for power-law kernels.
    oracle: Option<f64>,
    max_rel_discrepancy: f64,
}

fn compare(ctx: &mut Context, a: &CompareArgs) -> Outcome {
    let symbol = load_kernel(&a.kernel.kernel)?;
    let times = time_grid(&a.grid)?;
    let lambda = a.grid.lambda;
    ctx.progress(&format!("comparing routes for {} on {} points", symbol.label(), times.len()));
    let spec = ContourSpec::default();
    let split = invert::solve_growth(&symbol, lambda, &times, &spec)?;
    let bromwich = invert::solve_growth_with(&symbol, lambda, &times, &spec, Mode::Bromwich)?;
    let direct = direct_route(&symbol, &a.grid, &times)?;
    let subordinated = subordination_route(&symbol, lambda, &times)?;
    let oracle = match symbol {
        KernelSymbol::PowerLaw { alpha } => Some(
            times
                .iter()
                .map(|&t| mlf::mittag_leffler_default(alpha, lambda * t.powf(alpha)))
                .collect::<crate::Result<Vec<_>>>()?,
        ),
        _ => None,
    };
    let rows: Vec<CompareRow> = (0..times.len())
        .map(|i| {
            let o = oracle.as_ref().map(|v| v[i]);
            let mut all = vec![split.values[i], bromwich.values[i], direct[i], subordinated[i]];
            all.extend(o);
            CompareRow {
                t: times[i],
                residue_split: split.values[i],
                bromwich: bromwich.values[i],
                direct: direct[i],
                subordination: subordinated[i],
                oracle: o,
                max_rel_discrepancy: max_rel_discrepancy(&all),
            }
        })
        .collect();
    let worst = rows.iter().map(|r| r.max_rel_discrepancy).fold(0.0, f64::max);
    let text = match a.format {
        Format::Csv => {
            let mut s = String::from("t,residue_split,bromwich,direct,subordination,oracle,max_rel_discrepancy\n");
            for r in &rows {
                let o = r.oracle.map(num).unwrap_or_default();
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{o},{}",
                    num(r.t),
                    num(r.residue_split),
                    num(r.bromwich),
                    num(r.direct),
                    num(r.subordination),
                    num(r.max_rel_discrepancy)
                );
            }
            s
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                config: Config<'a, CompareArgs>,
                max_rel_discrepancy: f64,
                rows: &'a [CompareRow],
            }
            to_json(&Out {
                config: Config { command: "compare", args: a, kernel_resolved: Some(resolved_kernel(&symbol)) },
                max_rel_discrepancy: worst,
                rows: &rows,
            })
        }
    };
    ctx.emit(&a.output, &text)?;
    if worst > a.tolerance {
        return Err(Failure::Refusal(format!("routes disagree by {worst:e}, above the tolerance {:e}", a.tolerance)));
    }
    Ok(0)
}
