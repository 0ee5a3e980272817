//! The `horadam` command-line front end.
//!
//! Exit codes: 0 on success (for `verify`, only when no violations were
//! found; for `reduce`, only when every row is within tolerance), 1 when a
//! certification or reduction check fails, 2 on usage or I/O errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::corollary::{reduction_check, Corollary, ReductionRow};
use crate::bounds::{Bound, BoundEngine, BoundReport};
use crate::classes::{ClassKind, ClassSpec};
use crate::horadam::{HoradamParams, PolyFamily};
use crate::verify::run_verification;

/// Reduction rows must agree with the engine to this relative tolerance.
pub const REDUCE_TOL: f64 = 1e-11;

#[derive(Debug, Parser)]
#[command(name = "horadam", version, about = "Horadam polynomials and bi-univalent coefficient bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate hₙ(x) by recurrence, optionally against the generating function.
    Poly(PolyArgs),
    /// Coefficient and Fekete-Szegő bounds for one class instance.
    Bounds(BoundsArgs),
    /// Monte-Carlo certification of the bounds; writes a JSON report.
    Verify(VerifyArgs),
    /// Compare the generic engine with every closed-form special case.
    Reduce(ReduceArgs),
    /// Sweep one parameter and emit bounds as CSV or JSON.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct FamilyArgs {
    /// fibonacci, lucas, pell, pell-lucas, chebyshev1, chebyshev2
    #[arg(long)]
    pub family: Option<String>,
    /// Explicit `a,b,p,q`.
    #[arg(long, allow_hyphen_values = true)]
    pub params: Option<String>,
}

impl FamilyArgs {
    pub fn resolve(&self) -> Result<HoradamParams> {
        match (&self.family, &self.params) {
            (Some(name), _) => Ok(name.parse::<PolyFamily>()?.params()),
            (None, Some(list)) => Ok(list.parse::<HoradamParams>()?),
            (None, None) => bail!("one of --family or --params is required"),
        }
    }
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub x: f64,
    /// Number of terms h₁..hₙ.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    /// Also print generating-function coefficients and the absolute difference.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    /// sstar, mocanu or alpha-blend
    #[arg(long = "class")]
    pub class: String,
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub x: f64,
}

impl SpecArgs {
    pub fn resolve(&self) -> Result<ClassSpec> {
        let kind: ClassKind = self.class.parse()?;
        Ok(ClassSpec::new(kind, self.alpha, self.family.resolve()?, self.x)?)
    }
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Fekete-Szegő parameters (comma-separated).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_value = "1")]
    pub nu: Vec<f64>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_value = "0,0.5,1,1.5,3")]
    pub nu: Vec<f64>,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Restrict |u₂| ≤ 1 − |u₁|².
    #[arg(long)]
    pub strict_schwarz: bool,
    /// Report path; printed to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[arg(long, default_value_t = 32, value_parser = clap::value_parser!(u32).range(1..))]
    pub grid_size: u32,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepVar {
    Alpha,
    X,
    Nu,
    /// Chebyshev-U with x = t.
    T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// sstar, mocanu or alpha-blend
    #[arg(long = "class")]
    pub class: String,
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "family")]
    pub params: Option<String>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.5)]
    pub x: f64,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, default_value = "1")]
    pub nu: Vec<f64>,
    #[arg(long, value_enum)]
    pub var: SweepVar,
    #[arg(long, allow_negative_numbers = true)]
    pub lo: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub hi: f64,
    #[arg(long, default_value_t = 11)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command, writing
/// human-readable output to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code().clamp(0, 255) as u8);
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

pub fn execute(command: &Command, out: &mut dyn Write) -> Result<ExitCode> {
    match command {
        Command::Poly(args) => cmd_poly(args, out),
        Command::Bounds(args) => cmd_bounds(args, out),
        Command::Verify(args) => cmd_verify(args, out),
        Command::Reduce(args) => cmd_reduce(args, out),
        Command::Sweep(args) => cmd_sweep(args, out),
    }
}

/// Rounds to 12 significant digits and prints the shortest form of the result.
pub fn sig12(v: f64) -> String {
    if !v.is_finite() {
        return if v.is_nan() {
            "nan".into()
        } else if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let rounded: f64 = format!("{v:.11e}").parse().expect("formatted float parses");
    format!("{rounded}")
}

fn bound_cell(b: Bound) -> String {
    match b {
        Bound::Finite(v) => sig12(v),
        Bound::Unbounded => "unbounded".into(),
    }
}

pub fn cmd_poly(args: &PolyArgs, out: &mut dyn Write) -> Result<ExitCode> {
    let params = args.family.resolve()?;
    let n = args.n as usize;
    let values = params.sequence(n, args.x);
    if args.oracle {
        let gf = params.gf_coefficients(args.x, n);
        writeln!(out, "n\th_n(x)\tgf\tabs_diff")?;
        for (i, (h, g)) in values.iter().zip(&gf).enumerate() {
            writeln!(out, "{}\t{}\t{}\t{:e}", i + 1, sig12(*h), sig12(*g), (h - g).abs())?;
        }
    } else {
        writeln!(out, "n\th_n(x)")?;
        for (i, h) in values.iter().enumerate() {
            writeln!(out, "{}\t{}", i + 1, sig12(*h))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct BoundsOutput<'a> {
    version: &'a str,
    spec: ClassSpec,
    reports: Vec<BoundReport>,
}

pub fn cmd_bounds(args: &BoundsArgs, out: &mut dyn Write) -> Result<ExitCode> {
    let spec = args.spec.resolve()?;
    let engine = BoundEngine::from_spec(&spec)?;
    let reports: Vec<BoundReport> = args.nu.iter().map(|&nu| engine.report(nu)).collect();
    if args.json {
        let doc = BoundsOutput { version: crate::VERSION, spec, reports };
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        return Ok(ExitCode::SUCCESS);
    }
    writeln!(out, "class {}  alpha {}  params {}  x {}", spec.kind, spec.alpha, spec.horadam, spec.x)?;
    writeln!(out, "D = {}", sig12(engine.denom()))?;
    if engine.h2.abs() <= 1e-12 {
        writeln!(out, "note: h2(x) = 0, the subordination collapses (degenerate)")?;
    }
    writeln!(out, "|a2| <= {}", engine.a2())?;
    writeln!(out, "|a3| <= {}", engine.a3())?;
    for r in &reports {
        writeln!(out, "nu = {}: |a3 - nu a2^2| <= {}  [{}; threshold |nu-1| = {}]", r.nu, r.fs_bound, r.fs_branch, sig12(r.threshold))?;
    }
    Ok(ExitCode::SUCCESS)
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<ExitCode> {
    let spec = args.spec.resolve()?;
    let report = run_verification(&spec, &args.nu, args.trials, args.seed, args.strict_schwarz)?;
    let json = serde_json::to_string_pretty(&report)?;
    match &args.out {
        Some(path) => {
            fs::write(path, format!("{json}\n")).with_context(|| format!("writing {}", path.display()))?;
            writeln!(
                out,
                "{} trials, {} admissible, {} violations; max ratios a2 {} a3 {} fs {}",
                report.trials,
                report.admissible,
                report.violations,
                sig12(report.max_ratio_a2),
                sig12(report.max_ratio_a3),
                sig12(report.max_ratio_fs)
            )?;
        }
        None => writeln!(out, "{json}")?,
    }
    Ok(if report.certified() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

pub fn reduction_table(grid_size: usize) -> Result<Vec<ReductionRow>> {
    Ok(Corollary::ALL.iter().map(|&c| reduction_check(c, grid_size)).collect::<Result<Vec<_>, _>>()?)
}

pub fn cmd_reduce(args: &ReduceArgs, out: &mut dyn Write) -> Result<ExitCode> {
    let rows = reduction_table(args.grid_size as usize)?;
    let ok = rows.iter().all(|r| r.points > 0 && r.max_rel_dev <= REDUCE_TOL && r.max_continuity_gap <= REDUCE_TOL);
    if args.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?;
    } else {
        writeln!(out, "{:<42} {:>7} {:>7} {:>12} {:>12}", "reduction", "points", "skipped", "max_rel_dev", "cont_gap")?;
        for r in &rows {
            writeln!(out, "{:<42} {:>7} {:>7} {:>12.3e} {:>12.3e}", r.label, r.points, r.skipped, r.max_rel_dev, r.max_continuity_gap)?;
        }
        writeln!(out, "{}", if ok { "all rows within 1e-11" } else { "FAILED: some rows exceed 1e-11" })?;
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

/// One emitted sweep row.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub sweep_var: SweepVar,
    pub value: f64,
    #[serde(flatten)]
    pub report: BoundReport,
}

impl SweepArgs {
    fn base_params(&self) -> Result<HoradamParams> {
        match (&self.family, &self.params) {
            (Some(name), _) => Ok(name.parse::<PolyFamily>()?.params()),
            (None, Some(list)) => Ok(list.parse::<HoradamParams>()?),
            (None, None) => Ok(PolyFamily::Fibonacci.params()),
        }
    }
}

/// Evaluates a sweep; rows are ordered by sweep index, then by ν.
pub fn sweep_rows(args: &SweepArgs) -> Result<Vec<SweepRow>> {
    if args.lo.is_nan() || args.hi.is_nan() || args.lo >= args.hi {
        bail!("sweep range needs lo < hi (got {} .. {})", args.lo, args.hi);
    }
    if args.steps < 2 {
        bail!("sweep needs at least 2 steps");
    }
    let kind: ClassKind = args.class.parse()?;
    if args.var == SweepVar::Alpha && !(kind.alpha_in_range(args.lo) && kind.alpha_in_range(args.hi)) {
        bail!("swept alpha range [{}, {}] leaves the admissible range of class {kind}", args.lo, args.hi);
    }
    let params = args.base_params()?;
    let mut rows = Vec::with_capacity(args.steps * args.nu.len());
    for i in 0..args.steps {
        let value = args.lo + (args.hi - args.lo) * i as f64 / (args.steps - 1) as f64;
        let (alpha, params, x, nus) = match args.var {
            SweepVar::Alpha => (value, params, args.x, args.nu.clone()),
            SweepVar::X => (args.alpha, params, value, args.nu.clone()),
            SweepVar::Nu => (args.alpha, params, args.x, vec![value]),
            SweepVar::T => (args.alpha, PolyFamily::ChebyshevSecond.params(), value, args.nu.clone()),
        };
        let engine = BoundEngine::from_spec(&ClassSpec::new(kind, alpha, params, x)?)?;
        rows.extend(nus.into_iter().map(|nu| SweepRow { sweep_var: args.var, value, report: engine.report(nu) }));
    }
    Ok(rows)
}

pub const CSV_HEADER: [&str; 8] = ["sweep_var", "value", "a2_bound", "a3_bound", "nu", "fs_bound", "fs_branch", "denom"];

pub fn write_csv(rows: &[SweepRow], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        let var = match r.sweep_var {
            SweepVar::Alpha => "alpha",
            SweepVar::X => "x",
            SweepVar::Nu => "nu",
            SweepVar::T => "t",
        };
        w.write_record([
            var.to_string(),
            sig12(r.value),
            bound_cell(r.report.a2_bound),
            bound_cell(r.report.a3_bound),
            sig12(r.report.nu),
            bound_cell(r.report.fs_bound),
            r.report.fs_branch.to_string(),
            sig12(r.report.denom),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<ExitCode> {
    let rows = sweep_rows(args)?;
    let mut buf = Vec::new();
    match args.format {
        Format::Csv => write_csv(&rows, &mut buf)?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut buf, &rows)?;
            buf.push(b'\n');
        }
    }
    match &args.out {
        Some(path) => fs::write(path, &buf).with_context(|| format!("writing {}", path.display()))?,
        None => out.write_all(&buf)?,
    }
    Ok(ExitCode::SUCCESS)
}
