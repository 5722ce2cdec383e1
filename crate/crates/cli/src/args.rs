use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "qcorr", version, about = "Correlation measures and monogamy checks for multi-qubit states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate correlation measures on one state file.
    Measure(MeasureArgs),
    /// Check one monogamy relation on one state file.
    Monogamy(MonogamyArgs),
    /// Check a relation over a reproducible batch of random states.
    Sweep(SweepArgs),
    /// Recompute the stored values of a named state.
    Counterexample(CounterexampleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    /// Closed form where one exists, the oracle otherwise.
    Auto,
    ClosedForm,
    Oracle,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TimestampMode {
    Now,
    /// Epoch timestamp and zero wall time, for byte-stable output.
    Fixed,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    /// Fibonacci grid size for axis searches (at least 8).
    #[arg(long, default_value_t = 1000)]
    pub grid_points: usize,
    /// Nelder-Mead iterations after the grid stage.
    #[arg(long, default_value_t = 200)]
    pub refine_iters: usize,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args)]
pub struct MeasureArgs {
    #[arg(long)]
    pub state: PathBuf,
    /// Comma-separated measure names, or `all`.
    #[arg(long, default_value = "all")]
    pub measures: String,
    /// The measured (or, for negativity, transposed) qubit.
    #[arg(long, default_value_t = 0)]
    pub measured: usize,
    #[arg(long, value_enum, default_value_t = MethodChoice::Auto)]
    pub method: MethodChoice,
    #[command(flatten)]
    pub search: SearchArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct MonogamyArgs {
    #[arg(long)]
    pub state: PathBuf,
    #[arg(long)]
    pub relation: String,
    /// Pivot party for MULTI_BELL, NOSIGNALING and AVERAGES.
    #[arg(long, default_value_t = 0)]
    pub pivot: usize,
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[command(flatten)]
    pub search: SearchArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub relation: String,
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub qubits: usize,
    #[arg(long)]
    pub rank: Option<usize>,
    #[arg(long)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub pivot: usize,
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long, value_enum, default_value_t = TimestampMode::Now)]
    pub timestamp: TimestampMode,
    #[command(flatten)]
    pub search: SearchArgs,
    /// Per-sample rows; the summary goes next to it as `<stem>.summary.json`.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct CounterexampleArgs {
    /// saturating3, ghz3, gen_ghz(α), mixed_ghz3, mixed_ghz_n(n) or ghz3_for_N1.
    pub name: String,
    /// Also check this relation on the named state.
    #[arg(long)]
    pub relation: Option<String>,
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Write the named state as a state file.
    #[arg(long)]
    pub write_state: Option<PathBuf>,
    #[command(flatten)]
    pub search: SearchArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}
