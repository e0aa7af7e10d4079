use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use neartouch::exec::Execution;
use neartouch::geometry::DiskPair;
use neartouch::harness::config::{ExperimentConfig, Format};
use neartouch::harness::report::{csv_string, load_structured, structured_string, Report};
use neartouch::harness::{predict_sweep, run_sweep, verify, Suite, SweepRecord};
use neartouch::solver::{BoundaryModel, IncidentField, SolverOptions};
use neartouch::{Complex64, Vec2};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Exit status when a solve fails or a verification check does not pass.
const EXIT_FAILED: u8 = 1;
/// Exit status for bad input (configuration, arguments, files).
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(
    name = "neartouch",
    version,
    about = "Helmholtz scattering by two nearly touching disks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one configuration and print its measurements.
    Solve(SolveArgs),
    /// Run the sweep described by a configuration file.
    Sweep(SweepArgs),
    /// Print the asymptotic predictions of a sweep without solving.
    Asym(SweepArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Convert a structured report to another format.
    Report(ReportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Structured,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Structured => Format::Structured,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    ZeroFlux,
    FluxCoupled,
    Pec,
}

#[derive(Clone, Copy, ValueEnum)]
enum IncidentArg {
    PlaneWave,
    Sinusoid,
}

#[derive(Args)]
struct Output {
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Args)]
struct SolveArgs {
    /// Configuration with a single grid point; overrides the flags below.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    r1: f64,
    #[arg(long, default_value_t = 1.0)]
    r2: f64,
    #[arg(long, default_value_t = 1e-3)]
    eps: f64,
    #[arg(long, default_value_t = 0.05)]
    k: f64,
    #[arg(long, value_enum, default_value = "zero-flux")]
    model: ModelArg,
    /// Coupling constant of the flux-coupled model.
    #[arg(long, default_value_t = 1.0)]
    tau: f64,
    #[arg(long, value_enum, default_value = "plane-wave")]
    incident: IncidentArg,
    /// Propagation (or oscillation) direction as x1,x2.
    #[arg(long, value_delimiter = ',', num_args = 2, default_values_t = [0.0, 1.0])]
    direction: Vec<f64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    config: PathBuf,
    /// Worker threads; 1 runs serially, 0 uses every core.
    #[arg(long)]
    jobs: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    /// Seed of the randomized configurations.
    #[arg(long, default_value_t = 20240611)]
    seed: u64,
    #[arg(long)]
    jobs: Option<usize>,
    /// Write the full structured report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    /// Structured report produced by `sweep --format structured`.
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    output: Output,
}

/// Errors that should map to the input exit status.
#[derive(Debug)]
struct InputError(String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn input<T>(r: neartouch::Result<T>) -> Result<T> {
    r.map_err(|e| InputError(e.to_string()).into())
}

fn execution(jobs: Option<usize>) -> Execution {
    let exec = Execution::from_jobs(jobs);
    if exec != Execution::Serial && !Execution::parallel_available() {
        eprintln!("warning: built without the parallel feature, running serially");
    }
    exec
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(
    records: &[SweepRecord],
    format: Format,
    config: Option<&ExperimentConfig>,
) -> Result<String> {
    Ok(match format {
        Format::Csv => csv_string(records)?,
        Format::Structured => {
            structured_string(&Report::new(config.cloned(), records.to_vec()))? + "\n"
        }
    })
}

/// Reports failed records on stderr and returns whether all succeeded.
fn summarize(records: &[SweepRecord]) -> bool {
    let mut ok = true;
    for r in records.iter().filter(|r| !r.succeeded()) {
        ok = false;
        eprintln!(
            "record {} (eps = {}, k = {}): {}",
            r.index,
            r.pair.eps,
            r.k,
            r.error.as_deref().unwrap_or("no measurement")
        );
    }
    ok
}

fn solve(a: SolveArgs) -> Result<bool> {
    let (records, config) = if let Some(path) = &a.config {
        let cfg = input(ExperimentConfig::load(path))?;
        if cfg.grid().len() != 1 {
            bail!(InputError(
                "solve needs a configuration with a single grid point; use sweep".into()
            ));
        }
        (run_sweep(&cfg, Execution::Serial)?, Some(cfg))
    } else {
        let pair = input(DiskPair::new(a.r1, a.r2, a.eps))?;
        let model = match a.model {
            ModelArg::ZeroFlux => BoundaryModel::ZeroFlux,
            ModelArg::FluxCoupled => BoundaryModel::FluxCoupled { tau: a.tau },
            ModelArg::Pec => BoundaryModel::Pec,
        };
        input(model.validate())?;
        let dir = Vec2::new(a.direction[0], a.direction[1]);
        let inc = input(match a.incident {
            IncidentArg::PlaneWave => IncidentField::plane_wave(a.k, dir, Complex64::new(1.0, 0.0)),
            IncidentArg::Sinusoid => IncidentField::sinusoid(a.k, 1.0, dir),
        })?;
        (
            vec![SweepRecord::run(
                0,
                pair,
                model,
                inc,
                SolverOptions::default(),
            )],
            None,
        )
    };
    let format = a
        .output
        .format
        .map(Format::from)
        .unwrap_or(Format::Structured);
    write_out(
        a.output.out.as_deref(),
        &render(&records, format, config.as_ref())?,
    )?;
    Ok(summarize(&records))
}

fn sweep(a: SweepArgs, solve: bool) -> Result<bool> {
    let cfg = input(ExperimentConfig::load(&a.config))?;
    let records = if solve {
        run_sweep(&cfg, execution(a.jobs))?
    } else {
        predict_sweep(&cfg)?
    };
    let format = a
        .output
        .format
        .map(Format::from)
        .unwrap_or(cfg.output.format);
    let out = a.output.out.clone().or_else(|| cfg.output.path.clone());
    write_out(out.as_deref(), &render(&records, format, Some(&cfg))?)?;
    Ok(!solve || summarize(&records))
}

fn run_verify(a: VerifyArgs) -> Result<bool> {
    let suite: Suite = input(a.suite.parse())?;
    let report = verify(suite, execution(a.jobs), a.seed);
    for c in &report.checks {
        println!(
            "[{}] {:>2} {}: {:.6e} (expected {}){}",
            if c.passed { "PASS" } else { "FAIL" },
            c.criterion,
            c.name,
            c.measured,
            c.expected,
            if c.detail.is_empty() {
                String::new()
            } else {
                format!("  {}", c.detail)
            }
        );
    }
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    println!("{} checks, {} failed", report.checks.len(), failed);
    if let Some(p) = &a.out {
        let text = serde_json::to_string_pretty(&report)?;
        std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(report.passed)
}

fn report(a: ReportArgs) -> Result<bool> {
    let rep = input(load_structured(&a.input))?;
    let format = a.output.format.map(Format::from).unwrap_or(Format::Csv);
    write_out(
        a.output.out.as_deref(),
        &render(&rep.records, format, rep.config.as_ref())?,
    )?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => solve(a),
        Command::Sweep(a) => sweep(a, true),
        Command::Asym(a) => sweep(a, false),
        Command::Verify(a) => run_verify(a),
        Command::Report(a) => report(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAILED),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<InputError>().is_some() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::from(EXIT_FAILED)
            }
        }
    }
}
