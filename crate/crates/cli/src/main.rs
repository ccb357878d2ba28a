mod commands;
mod output;
mod tables;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cyclodcr::DcrError;

/// Compile q-hypergeometric 6j-symbols into deferred cyclotomic form and
/// evaluate them at roots of unity or anywhere on a q grid.
///
/// Spins are entered as twice-spins: spin 30 is `--spins 60,60,60,60,60,60`.
/// The level `k` selects `q = exp(i pi / (k + 2))`.
#[derive(Parser)]
#[command(name = "cyclodcr", version)]
struct Cli {
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the compiled representation of a 6j-symbol.
    Compile(CompileArgs),
    /// Evaluate a 6j-symbol with one engine.
    Eval(EvalArgs),
    /// Evaluate one compiled 6j-symbol over a grid of q values.
    Sweep(SweepArgs),
    /// Conditioning diagnostics of a 6j-symbol at a root of unity.
    Diagnose(DiagnoseArgs),
    /// Recompute a published table next to its reference values.
    Table(TableArgs),
    /// State sum over a triangulation file.
    Tv(TvArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    /// Deferred form projected in double precision.
    #[value(name = "dcr-f64")]
    DcrF64,
    /// Deferred form projected with MPFR at `--bits`.
    #[value(name = "dcr-mp")]
    DcrMp,
    /// Eager log-sum-exp baseline in double precision.
    #[value(name = "lse-f64")]
    LseF64,
    /// Eager log-sum-exp baseline with MPFR at `--bits`.
    #[value(name = "lse-mp")]
    LseMp,
    /// Exact arithmetic in the cyclotomic field; small levels only.
    Exact,
    /// Exact rationals at q = 1; ignores the level.
    Classical,
}

impl std::fmt::Display for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let v = self.to_possible_value().expect("no skipped variants");
        f.write_str(v.get_name())
    }
}

impl Engine {
    pub fn uses_bits(self) -> bool {
        matches!(self, Engine::DcrMp | Engine::LseMp | Engine::Exact)
    }
}

#[derive(Args)]
pub struct Spins {
    /// Six comma-separated twice-spins `2j1,...,2j6`.
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    spins: Vec<i64>,
}

impl Spins {
    pub fn labels(&self) -> CliResult<cyclodcr::SixJLabels> {
        let t: [i64; 6] = self
            .spins
            .as_slice()
            .try_into()
            .map_err(|_| CliError::Input(format!("--spins needs 6 values, got {}", self.spins.len())))?;
        if t.iter().any(|&x| x < 0) {
            return Err(CliError::Input("twice-spins must be non-negative".into()));
        }
        Ok(cyclodcr::SixJLabels::new(t))
    }
}

#[derive(Args)]
pub struct CompileArgs {
    #[command(flatten)]
    spins: Spins,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
pub struct EvalArgs {
    #[command(flatten)]
    spins: Spins,
    /// Level `k`; required by every engine except `classical`.
    #[arg(long)]
    level: Option<u32>,
    #[arg(long, value_enum, default_value = "dcr-f64")]
    engine: Engine,
    /// Working precision of `dcr-mp`, `lse-mp` and `exact` output.
    #[arg(long)]
    bits: Option<u32>,
    /// Also print `a` and `r` of the value `a sqrt(r)`.
    #[arg(long)]
    parts: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
pub struct SweepArgs {
    #[command(flatten)]
    spins: Spins,
    /// First grid point: a real q, or with `--unit-circle` the angle of
    /// q in units of pi.
    #[arg(long, allow_hyphen_values = true)]
    start: f64,
    /// Last grid point, same units as `--start`.
    #[arg(long, allow_hyphen_values = true)]
    stop: f64,
    #[arg(long, default_value_t = 100)]
    count: usize,
    /// Interpret start and stop as angles: `q = exp(i pi t)`.
    #[arg(long)]
    unit_circle: bool,
    /// `dcr-f64` or `dcr-mp`.
    #[arg(long, value_enum, default_value = "dcr-f64")]
    engine: Engine,
    #[arg(long)]
    bits: Option<u32>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
pub struct DiagnoseArgs {
    #[command(flatten)]
    spins: Spins,
    #[arg(long)]
    level: u32,
    /// Precision used for the summands.
    #[arg(long, default_value_t = 512)]
    bits: u32,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    T1,
    T3,
    T4,
}

#[derive(Args)]
pub struct TableArgs {
    #[arg(value_enum)]
    which: Which,
    /// Include the large-spin rows of t1 and t4.
    #[arg(long)]
    full: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
pub struct TvArgs {
    /// Triangulation JSON file.
    #[arg(long)]
    file: PathBuf,
    #[arg(long)]
    level: u32,
    /// Evaluate with MPFR at this precision instead of doubles.
    #[arg(long)]
    bits: Option<u32>,
    /// Drop edge weights and tetrahedral phases.
    #[arg(long)]
    literal: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

/// Failure of a command, mapped to the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Inadmissible or invalid input: exit 2.
    Input(String),
    /// Anything else: exit 1.
    Internal(String),
}

impl From<DcrError> for CliError {
    fn from(e: DcrError) -> Self {
        if e.is_inadmissible() {
            CliError::Input(e.to_string())
        } else {
            CliError::Internal(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.command {
        Command::Compile(a) => commands::compile(a),
        Command::Eval(a) => commands::eval(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Diagnose(a) => commands::diagnose(a),
        Command::Table(a) => tables::table(a),
        Command::Tv(a) => commands::tv(a),
    };
    let result = out.and_then(|text| output::emit(cli.output.as_deref(), &text));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
