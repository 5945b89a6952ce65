//! `hecklab` command-line front end.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use hecklab::coxeter::{CoxeterSystem, DEFAULT_BALL_CAP};
use hecklab::hecke::MultiParameter;

use report::JobConfig;

pub const EXIT_VERIFICATION: u8 = 2;
pub const EXIT_CONFIG: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Lib(#[from] hecklab::Error),
}

#[derive(Parser, Debug)]
#[command(
    name = "hecklab",
    version,
    about = "Hecke algebras of Coxeter groups: identities, norms and classifiers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// System summary, type classification and conjugacy classes
    Info(Opts),
    /// Elements of the ball of radius n
    Ball(Opts),
    /// Growth series coefficients up to degree n
    Growth(Opts),
    /// Product of two element literals
    HeckeMul(Opts),
    /// Operator norm lower bound of an element on the ball of radius n
    Norm(Opts),
    /// Ratios ||x|| / ||x||_2 for random homogeneous x
    Haagerup(Opts),
    /// Decomposition, intertwiner and orthogonality suites
    KhintchineVerify(Opts),
    /// Simplicity and unique trace verdict
    Simplicity(Opts),
    /// Nuclearity verdict from the component types
    Nuclearity(Opts),
    /// Powers elements, averaging norm and decay
    Powers(Opts),
    /// The 14-epsilon inequality and the parallelogram identity
    Ching(Opts),
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// System definition file (JSON)
    #[arg(long)]
    pub system: PathBuf,
    /// Parameter: one value for all generators or one per generator, comma separated
    #[arg(long, default_value = "1")]
    pub q: String,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Iterations of the averaging operator
    #[arg(long)]
    pub levels: Option<usize>,
    /// Element literal, e.g. "T[s,t] + 0.5*T[]"
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long)]
    pub y: Option<String>,
    /// Parameter grid "lo:hi:count"
    #[arg(long)]
    pub grid: Option<String>,
    /// Require exact rational arithmetic
    #[arg(long)]
    pub exact: bool,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the CSV table of the command here
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Write the operator matrix (Matrix Market) here
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Worker threads
    #[arg(long)]
    pub jobs: Option<usize>,
}

impl Command {
    fn split(&self) -> (&'static str, &Opts) {
        match self {
            Command::Info(o) => ("info", o),
            Command::Ball(o) => ("ball", o),
            Command::Growth(o) => ("growth", o),
            Command::HeckeMul(o) => ("hecke-mul", o),
            Command::Norm(o) => ("norm", o),
            Command::Haagerup(o) => ("haagerup", o),
            Command::KhintchineVerify(o) => ("khintchine-verify", o),
            Command::Simplicity(o) => ("simplicity", o),
            Command::Nuclearity(o) => ("nuclearity", o),
            Command::Powers(o) => ("powers", o),
            Command::Ching(o) => ("ching", o),
        }
    }
}

/// Context shared by all commands.
pub struct Ctx {
    pub system: Arc<CoxeterSystem>,
    pub q: MultiParameter,
    pub opts: Opts,
    pub cap: usize,
}

fn ball_cap() -> Result<usize, CliError> {
    match std::env::var("HECKLAB_MAX_BALL") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("HECKLAB_MAX_BALL must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_BALL_CAP),
    }
}

fn run(command: &Command) -> Result<u8, CliError> {
    let (name, opts) = command.split();
    if let Some(jobs) = opts.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Config(format!("--jobs: {e}")))?;
    }
    let text = std::fs::read_to_string(&opts.system)
        .map_err(|e| CliError::Config(format!("{}: {e}", opts.system.display())))?;
    let system = Arc::new(CoxeterSystem::from_json(&text)?);
    let q = MultiParameter::parse(&system, &opts.q)?;
    let ctx = Ctx {
        system,
        q,
        opts: opts.clone(),
        cap: ball_cap()?,
    };
    let config = JobConfig {
        command: name.to_string(),
        system: Some(ctx.system.to_file()),
        q: Some(
            ctx.q
                .values()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(","),
        ),
        d: opts.d,
        n: opts.n,
        samples: opts.samples,
        seed: opts.seed,
        levels: opts.levels,
        x: opts.x.clone(),
        y: opts.y.clone(),
        grid: opts.grid.clone(),
        exact: opts.exact,
        cap: ctx.cap,
    };
    let outcome = commands::dispatch(name, &ctx)?;
    for note in &outcome.notes {
        eprintln!("{note}");
    }
    let text = report::render(&config, &outcome);
    match &opts.out {
        Some(path) => report::write(path, &text)?,
        None => print!("{text}"),
    }
    if let Some(path) = &opts.csv {
        match &outcome.csv {
            Some(csv) => report::write(path, csv)?,
            None => return Err(CliError::Config(format!("{name} produces no CSV table"))),
        }
    }
    Ok(if outcome.passed { 0 } else { EXIT_VERIFICATION })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}
