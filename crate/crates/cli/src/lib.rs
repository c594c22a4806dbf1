//! Command-line front end: `compute`, `verify`, `gen` and `oracle`.
//!
//! [`run`] takes parsed arguments and an output sink and returns the process exit code,
//! so the binary is a thin wrapper and the commands can be driven in-process.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperalpha::bounds::{verify_all, BoundReport, Status};
use hyperalpha::hypergraph::{gen_complete, gen_fano, gen_random, parse_khg, serialize_khg};
use hyperalpha::solver::{analytic_connectivity, grid_oracle, SolveOutcome};
use hyperalpha::{Error, Hypergraph, SolverConfig};
use serde::{Deserialize, Serialize};
use thiserror::Error as ThisError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_ITERATION_CAP: i32 = 3;
pub const EXIT_BOUND_FAILED: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "hyperalpha",
    version,
    about = "Analytic connectivity of k-uniform hypergraphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute α(H) for a .khg file.
    Compute(ComputeArgs),
    /// Compute α(H), then check every bound against it.
    Verify(VerifyArgs),
    /// Write a generated instance in .khg format.
    Gen(GenArgs),
    /// Brute-force lattice estimate of α(H).
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 50_000)]
    pub max_iter: usize,
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for the subproblems (default: all cores). Never affects results.
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Include wall-clock time per phase in the output.
    #[arg(long)]
    pub timings: bool,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            tol: self.tol,
            max_iter: self.max_iter,
            restarts: self.restarts,
            seed: self.seed,
            ..SolverConfig::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    pub path: PathBuf,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub path: PathBuf,
    /// Additive slack for every bound comparison.
    #[arg(long, default_value_t = 1e-4)]
    pub slack: f64,
    #[command(flatten)]
    pub solver: SolverArgs,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(subcommand)]
    pub kind: GenKind,
    /// Output file; written atomically. Standard output when omitted.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GenKind {
    /// All k-subsets of n vertices.
    Complete {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// The Fano plane.
    Fano,
    /// m distinct k-subsets drawn uniformly.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Redraw until the instance is connected.
        #[arg(long)]
        connected: bool,
    },
}

impl GenKind {
    pub fn build(&self) -> hyperalpha::Result<Hypergraph> {
        match *self {
            GenKind::Complete { n, k } => gen_complete(n, k),
            GenKind::Fano => Ok(gen_fano()),
            GenKind::Random {
                n,
                k,
                m,
                seed,
                connected,
            } => gen_random(n, k, m, seed, connected),
        }
    }
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    pub path: PathBuf,
    /// Lattice resolution M: weights are multiples of 1/M.
    #[arg(long, default_value_t = 20)]
    pub grid: usize,
    /// Also print the minimum for each excluded vertex.
    #[arg(long)]
    pub per_j: bool,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Config(String),
    #[error("write failed: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io(_) => EXIT_INPUT,
            CliError::Config(_) => EXIT_CONFIG,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_)
            | Error::TooLarge(_)
            | Error::ConnectivityUnattainable { .. } => CliError::Config(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputDescriptor {
    Path(String),
    Generated(GenKind),
}

/// Instance shape echoed in every record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Shape {
    pub n: usize,
    pub k: usize,
    pub m: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    #[serde(flatten)]
    pub solver: SolverConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slack: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub parse_s: f64,
    pub solve_s: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds_s: Option<f64>,
}

/// Machine output of `compute` and `verify`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub input: InputDescriptor,
    pub shape: Shape,
    pub config: ConfigEcho,
    pub alpha: f64,
    pub argmin_j: usize,
    pub converged: bool,
    pub per_j: Vec<SolveOutcome<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundReport<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

/// Machine output of `oracle`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub input: InputDescriptor,
    pub shape: Shape,
    pub grid: usize,
    pub alpha: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_j: Option<Vec<f64>>,
}

/// Runs one command, writing its report to `out`; returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Compute(args) => cmd_compute(&args, out),
        Command::Verify(args) => cmd_verify(&args, out),
        Command::Gen(args) => cmd_gen(&args, out),
        Command::Oracle(args) => cmd_oracle(&args, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn load(path: &Path) -> Result<Hypergraph, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_khg(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn shape(h: &Hypergraph) -> Shape {
    Shape {
        n: h.n(),
        k: h.k(),
        m: h.edge_count(),
    }
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    if jobs == Some(0) {
        return Err(CliError::Config("--jobs must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))
}

fn solve(path: &Path, args: &SolverArgs, slack: Option<f64>) -> Result<RunRecord, CliError> {
    let cfg = args.config();
    cfg.validate()?;
    if let Some(s) = slack {
        if !s.is_finite() || s < 0.0 {
            return Err(CliError::Config(
                "--slack must be a finite non-negative number".into(),
            ));
        }
    }
    let pool = pool(args.jobs)?;

    let t0 = Instant::now();
    let h = load(path)?;
    let parse_s = t0.elapsed().as_secs_f64();

    let t1 = Instant::now();
    let result = pool.install(|| analytic_connectivity::<f64>(&h, &cfg))?;
    let solve_s = t1.elapsed().as_secs_f64();

    let (bounds, bounds_s) = match slack {
        Some(s) => {
            let t2 = Instant::now();
            let report = verify_all(&h, result.alpha, s);
            (Some(report), Some(t2.elapsed().as_secs_f64()))
        }
        None => (None, None),
    };

    Ok(RunRecord {
        input: InputDescriptor::Path(path.display().to_string()),
        shape: shape(&h),
        config: ConfigEcho { solver: cfg, slack },
        alpha: result.alpha,
        argmin_j: result.argmin_j,
        converged: result.all_converged(),
        per_j: result.per_j,
        bounds,
        timings: args.timings.then_some(Timings {
            parse_s,
            solve_s,
            bounds_s,
        }),
    })
}

fn cmd_compute(args: &ComputeArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let record = solve(&args.path, &args.solver, None)?;
    emit_run(&record, args.solver.format, out)?;
    Ok(if record.converged {
        EXIT_OK
    } else {
        EXIT_ITERATION_CAP
    })
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let record = solve(&args.path, &args.solver, Some(args.slack))?;
    emit_run(&record, args.solver.format, out)?;
    let pass = record.bounds.as_ref().is_some_and(|b| b.all_pass());
    Ok(if pass { EXIT_OK } else { EXIT_BOUND_FAILED })
}

fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let h = args.kind.build()?;
    let text = serialize_khg(&h);
    match &args.output {
        Some(path) => write_atomic(path, text.as_bytes())?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn cmd_oracle(args: &OracleArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let h = load(&args.path)?;
    if h.n() < 2 {
        return Err(CliError::Config(format!(
            "oracle needs n >= 2, got {}",
            h.n()
        )));
    }
    let per_j = (1..=h.n())
        .map(|j| grid_oracle::<f64>(&h, j, args.grid))
        .collect::<hyperalpha::Result<Vec<_>>>()?;
    let alpha = per_j.iter().copied().fold(f64::INFINITY, f64::min);
    let record = OracleRecord {
        input: InputDescriptor::Path(args.path.display().to_string()),
        shape: shape(&h),
        grid: args.grid,
        alpha,
        per_j: args.per_j.then_some(per_j),
    };
    match args.format {
        Format::Json => write_json(&record, out)?,
        Format::Human => {
            let mut s = String::new();
            header(&mut s, &record.input, &record.shape);
            let _ = writeln!(s, "grid       {}", record.grid);
            let _ = writeln!(s, "alpha      {}", sci(record.alpha));
            if let Some(values) = &record.per_j {
                let _ = writeln!(s, "\n{:>6}  {:>24}", "j", "grid minimum");
                for (j, v) in values.iter().enumerate() {
                    let _ = writeln!(s, "{:>6}  {:>24}", j + 1, sci(*v));
                }
            }
            out.write_all(s.as_bytes())?;
        }
    }
    Ok(EXIT_OK)
}

/// Writes through a temporary file in the target directory, so a failed run leaves nothing.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .map_err(|e| CliError::Input(format!("cannot write {}: {}", path.display(), e.error)))?;
    Ok(())
}

fn write_json<T: Serialize>(value: &T, out: &mut dyn Write) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Input(format!("serialization failed: {e}")))?;
    text.push('\n');
    out.write_all(text.as_bytes())?;
    Ok(())
}

/// 17 significant digits.
fn sci(v: f64) -> String {
    format!("{v:.16e}")
}

fn header(s: &mut String, input: &InputDescriptor, shape: &Shape) {
    let name = match input {
        InputDescriptor::Path(p) => p.clone(),
        InputDescriptor::Generated(g) => format!("{g:?}"),
    };
    let _ = writeln!(s, "input      {name}");
    let _ = writeln!(s, "n k m      {} {} {}", shape.n, shape.k, shape.m);
}

fn emit_run(record: &RunRecord, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Json => write_json(record, out),
        Format::Human => {
            out.write_all(render_human(record).as_bytes())?;
            Ok(())
        }
    }
}

pub fn render_human(record: &RunRecord) -> String {
    let mut s = String::new();
    header(&mut s, &record.input, &record.shape);
    let _ = writeln!(s, "alpha      {}", sci(record.alpha));
    let _ = writeln!(s, "argmin_j   {}", record.argmin_j);
    let _ = writeln!(s, "converged  {}", record.converged);
    let _ = writeln!(
        s,
        "\n{:>6}  {:>24}  {:>10}  {:>10}  converged",
        "j", "value", "kkt", "iterations"
    );
    for o in &record.per_j {
        let _ = writeln!(
            s,
            "{:>6}  {:>24}  {:>10.3e}  {:>10}  {}",
            o.excluded_j,
            sci(o.value),
            o.kkt_residual,
            o.iterations,
            o.converged
        );
    }
    if let Some(b) = &record.bounds {
        let _ = writeln!(s, "\n{:<18}  {:>24}  status", "bound", "value");
        for (name, check) in b.checks() {
            let value = check.bound.map(sci).unwrap_or_else(|| "-".into());
            let status = match &check.status {
                Status::Pass => "pass".to_string(),
                Status::Fail => "FAIL".to_string(),
                Status::NotApplicable(why) => format!("n/a ({why})"),
            };
            let _ = writeln!(s, "{name:<18}  {value:>24}  {status}");
        }
        if let Some(f) = b.cutset_upper_floor {
            let _ = writeln!(s, "{:<18}  {:>24}", "cutset_floor", sci(f));
        }
        let _ = writeln!(s, "{:<18}  {:>24}", "(n/k)*alpha", sci(b.scaled_alpha));
    }
    if let Some(t) = &record.timings {
        let _ = writeln!(s, "\nparse {:.3}s  solve {:.3}s", t.parse_s, t.solve_s);
        if let Some(b) = t.bounds_s {
            let _ = writeln!(s, "bounds {b:.3}s");
        }
    }
    s
}
