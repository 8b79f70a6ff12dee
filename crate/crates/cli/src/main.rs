use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use eda_lab::harness::{
    self, replicate, run_sweep, write_records, KValues, PbarSpec, Preset, SweepSpec,
};
use eda_lab::instrumentation::DEFAULT_BETA;
use eda_lab::{oracle, ComparatorKind, Error, Result};

const SEED_ENV: &str = "EDA_LAB_SEED";

/// Compact GA experiments on Dynamic BinVal, OneMax and BinVal.
#[derive(Debug, Parser)]
#[command(name = "eda-lab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run repeated cGA runs at a single K and write one CSV row per run.
    Run(RunArgs),
    /// Run a preset or a spec-file sweep and write runs.csv and cells.csv.
    Sweep(SweepArgs),
    /// Print the exact signal probability and transition kernel of one bit.
    Oracle(OracleArgs),
    /// Print the graded K grid between two bounds.
    Grid(GridArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// dynbv, dynbv-exact, onemax or binval.
    #[arg(long, default_value = "dynbv")]
    benchmark: String,
    #[arg(long, default_value_t = 300)]
    n: usize,
    #[arg(long)]
    k: f64,
    #[arg(long, default_value_t = 20)]
    runs: u32,
    /// Master seed; EDA_LAB_SEED takes precedence when set.
    #[arg(long, default_value_t = harness::DEFAULT_MASTER_SEED)]
    seed: u64,
    #[arg(long, default_value_t = eda_lab::cga::DEFAULT_ITERATION_CAP)]
    cap: u64,
    /// Use margin 1/n (the default).
    #[arg(long, conflicts_with = "pbar")]
    pbar_one_over_n: bool,
    /// Explicit margin in (0, 1/2).
    #[arg(long)]
    pbar: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_BETA)]
    beta: f64,
    #[arg(long, default_value_t = 1)]
    parallelism: usize,
    /// Per-run CSV destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long, required_unless_present = "spec", conflicts_with = "spec")]
    preset: Option<String>,
    /// key = value sweep description.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long)]
    out_dir: PathBuf,
    #[arg(long)]
    parallelism: Option<usize>,
    /// Overrides the preset's master seed; EDA_LAB_SEED takes precedence.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct OracleArgs {
    /// File with one frequency per line.
    #[arg(long)]
    freqs: PathBuf,
    /// One-based bit index.
    #[arg(long)]
    bit: usize,
    #[arg(long)]
    k: f64,
}

#[derive(Debug, Args)]
struct GridArgs {
    #[arg(long)]
    min: u32,
    #[arg(long)]
    max: u32,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("eda-lab: {e}");
            ExitCode::from(if e.is_io() { 3 } else { 2 })
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Run(args) => cmd_run(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Grid(args) => cmd_grid(args),
    }
}

fn seed_override() -> Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::Usage(format!("{SEED_ENV}={v:?} is not a 64-bit unsigned integer"))),
        Err(_) => Ok(None),
    }
}

fn stdout_err(e: io::Error) -> Error {
    Error::Io {
        path: PathBuf::from("<stdout>"),
        source: e,
    }
}

fn cmd_run(args: RunArgs) -> Result<()> {
    let benchmark: ComparatorKind = args.benchmark.parse()?;
    let mut spec = SweepSpec::new(args.n, KValues::Explicit(vec![args.k]), args.runs);
    spec.benchmark = benchmark;
    spec.pbar = match args.pbar {
        Some(v) if !args.pbar_one_over_n => PbarSpec::Explicit(v),
        _ => PbarSpec::OneOverN,
    };
    spec.beta = args.beta;
    spec.iteration_cap = args.cap;
    spec.master_seed = seed_override()?.unwrap_or(args.seed);
    spec.parallelism = args.parallelism;

    let out = run_sweep(&spec)?;
    match &args.out {
        Some(path) => {
            harness::write_runs_csv(path, &out.rows)?;
            write_records(io::stdout().lock(), &out.cells).map_err(|e| Error::Csv {
                path: PathBuf::from("<stdout>"),
                source: e,
            })
        }
        None => write_records(io::stdout().lock(), &out.rows).map_err(|e| Error::Csv {
            path: PathBuf::from("<stdout>"),
            source: e,
        }),
    }
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    let mut spec = match (&args.preset, &args.spec) {
        (Some(name), _) => replicate(name.parse::<Preset>()?),
        (None, Some(path)) => SweepSpec::from_file(path)?,
        (None, None) => return Err(Error::Usage("either --preset or --spec is required".into())),
    };
    if args.preset.is_some() {
        spec.parallelism = std::thread::available_parallelism().map_or(1, |n| n.get());
    }
    if let Some(p) = args.parallelism {
        spec.parallelism = p;
    }
    if let Some(seed) = seed_override()?.or(args.seed) {
        spec.master_seed = seed;
    }

    let out = run_sweep(&spec)?;
    let (runs, cells) = harness::write_sweep(&args.out_dir, &out)?;
    let mut stdout = io::stdout().lock();
    writeln!(
        stdout,
        "wrote {} runs to {} and {} cells to {}",
        out.rows.len(),
        runs.display(),
        out.cells.len(),
        cells.display()
    )
    .map_err(stdout_err)
}

fn read_freqs(path: &Path) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            l.trim().parse::<f64>().map_err(|_| {
                Error::Usage(format!("{}:{}: {:?} is not a number", path.display(), i + 1, l.trim()))
            })
        })
        .collect()
}

fn cmd_oracle(args: OracleArgs) -> Result<()> {
    if !(args.k >= 1.0 && args.k.is_finite()) {
        return Err(Error::Usage(format!("K must be >= 1, got {}", args.k)));
    }
    let p = read_freqs(&args.freqs)?;
    if args.bit == 0 || args.bit > p.len() {
        return Err(Error::Usage(format!(
            "--bit is one-based and must lie in 1..={}, got {}",
            p.len(),
            args.bit
        )));
    }
    let i = args.bit - 1;
    let s = oracle::signal_probability(&p, i)?;
    let kernel = oracle::transition_kernel(&p, i, args.k)?;
    let drift = oracle::expected_drift(&p, i, args.k)?;
    let v_other = oracle::variance_excluding(&p, i)?;
    let v: f64 = p.iter().map(|q| q * (1.0 - q)).sum();
    let (lower, upper) = oracle::signal_probability_bounds(v_other);

    let mut out = io::stdout().lock();
    let lines = [
        format!("n: {}", p.len()),
        format!("bit: {}", args.bit),
        format!("K: {}", args.k),
        format!("variance: {v}"),
        format!("variance_other_bits: {v_other}"),
        format!("signal_probability: {s}"),
        format!("signal_lower_bound: {lower}"),
        format!("signal_upper_bound: {upper}"),
        format!("p_up: {}", kernel.p_up),
        format!("p_down: {}", kernel.p_down),
        format!("p_stay: {}", kernel.p_stay),
        format!("expected_drift: {drift}"),
    ];
    for line in lines {
        writeln!(out, "{line}").map_err(stdout_err)?;
    }
    Ok(())
}

fn cmd_grid(args: GridArgs) -> Result<()> {
    let ks = harness::paper_k_grid(args.min, args.max)?;
    let mut out = io::stdout().lock();
    for k in ks {
        writeln!(out, "{k}").map_err(stdout_err)?;
    }
    Ok(())
}
