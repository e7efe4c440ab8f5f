use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

mod commands;

/// Reciprocal-transform analysis of historical growth series.
#[derive(Debug, Parser)]
#[command(name = "hypergrowth", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Extract one row of a Maddison-style horizontal CSV/TSV as canonical CSV.
    Ingest(IngestArgs),
    /// Fit a hyperbola to each input series and report diagnostics as JSON.
    Fit(FitArgs),
    /// Chow test for a change of line in the reciprocal series at --year.
    TestBreak(TestBreakArgs),
    /// BIC-scored scan over 1 to --max-segments line segments in the reciprocal series.
    ScanBreaks(ScanArgs),
    /// GDP per capita as the ratio of a GDP and a population hyperbola.
    Ratio(RatioArgs),
    /// Render a figure as SVG or as plot-point CSV.
    ///
    /// Fitted hyperbolas are sampled at 200 points and stop 2% of the x-range
    /// short of their singularity year.
    Plot(PlotArgs),
    /// Write a seeded synthetic series as canonical CSV.
    Synth(SynthArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Ingest(_) => "ingest",
            Command::Fit(_) => "fit",
            Command::TestBreak(_) => "test-break",
            Command::ScanBreaks(_) => "scan-breaks",
            Command::Ratio(_) => "ratio",
            Command::Plot(_) => "plot",
            Command::Synth(_) => "synth",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Svg,
    Csv,
    Json,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Svg => "svg",
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Style {
    Linear,
    Semilog,
    Reciprocal,
    Overlay,
    Sparse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Hyperbolic,
    Piecewise,
    Slowdown,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output file; standard output when absent.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,
    #[arg(long, default_value = "World")]
    pub row_label: String,
    /// Multiplier applied to every cell, e.g. 0.001 for millions to billions.
    #[arg(long, default_value_t = 1.0)]
    pub scale: f64,
    #[arg(long, default_value = "unspecified")]
    pub unit: String,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Canonical `year,value` CSV; repeat for several series.
    #[arg(long, value_name = "PATH", required = true)]
    pub input: Vec<PathBuf>,
    /// Fit only years up to and including this one; later points still get residuals.
    #[arg(long, value_name = "YEAR")]
    pub exclude_after: Option<f64>,
    /// Exponent grid for (a - k·t)^(-q); first-order fit when absent.
    #[arg(long, value_delimiter = ',', value_name = "Q,Q,...")]
    pub q_grid: Option<Vec<f64>>,
    #[arg(long, default_value_t = hypergrowth::regimes::DEFAULT_Z_THRESHOLD)]
    pub z_threshold: f64,
    /// Relative slack before an uptick in the reciprocals counts as a violation.
    #[arg(long, default_value_t = 0.0)]
    pub mono_tolerance: f64,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct TestBreakArgs {
    #[arg(long, value_name = "PATH", required = true)]
    pub input: Vec<PathBuf>,
    /// Break year; the left sample is every year up to and including it.
    #[arg(long, value_name = "YEAR", required = true)]
    pub year: Vec<f64>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, value_name = "PATH", required = true)]
    pub input: Vec<PathBuf>,
    #[arg(long, default_value_t = hypergrowth::regimes::MAX_SEGMENTS)]
    pub max_segments: usize,
    #[arg(long, default_value_t = hypergrowth::regimes::MIN_SEGMENT_POINTS)]
    pub min_segment_points: usize,
    /// Drop years after this one before scanning.
    #[arg(long, value_name = "YEAR")]
    pub exclude_after: Option<f64>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct RatioArgs {
    /// GDP first, population second; each a fit report JSON or a canonical CSV.
    #[arg(long, value_name = "PATH", num_args = 1, required = true)]
    pub input: Vec<PathBuf>,
    /// Used when fitting CSV inputs.
    #[arg(long, value_name = "YEAR")]
    pub exclude_after: Option<f64>,
    /// Evaluation years; defaults to the inputs' years below both singularities.
    #[arg(long, value_delimiter = ',', value_name = "YEAR,YEAR,...")]
    pub grid: Option<Vec<f64>>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(long, value_name = "PATH", required = true)]
    pub input: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = Style::Linear)]
    pub style: Style,
    /// Years shown by the sparse style (required there).
    #[arg(long, value_delimiter = ',', value_name = "YEAR,YEAR,...")]
    pub keep_years: Option<Vec<f64>>,
    #[arg(long, value_name = "YEAR")]
    pub exclude_after: Option<f64>,
    /// Exponent grid for the overlay style.
    #[arg(long, value_delimiter = ',', value_name = "Q,Q,...")]
    pub q_grid: Option<Vec<f64>>,
    #[arg(long)]
    pub title: Option<String>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long, value_enum, default_value_t = Kind::Hyperbolic)]
    pub kind: Kind,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Standard deviation of reciprocal-space noise; per-kind default when absent.
    #[arg(long)]
    pub noise: Option<f64>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug)]
pub enum CliError {
    Usage(ErrorKind, String),
    Data(String),
}

impl From<hypergrowth::Error> for CliError {
    fn from(e: hypergrowth::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

/// Checks `--format` against what a subcommand can write.
pub fn resolve_format(out: &Output, allowed: &[Format]) -> Result<Format, CliError> {
    match out.format {
        None => Ok(allowed[0]),
        Some(f) if allowed.contains(&f) => Ok(f),
        Some(f) => Err(CliError::Usage(
            ErrorKind::InvalidValue,
            format!(
                "--format {} is not available here; use {}",
                f.name(),
                allowed.iter().map(|f| f.name()).collect::<Vec<_>>().join(" or ")
            ),
        )),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Ingest(a) => commands::ingest(a),
        Command::Fit(a) => commands::fit(a),
        Command::TestBreak(a) => commands::test_break(a),
        Command::ScanBreaks(a) => commands::scan_breaks(a),
        Command::Ratio(a) => commands::ratio(a),
        Command::Plot(a) => commands::plot(a),
        Command::Synth(a) => commands::synth(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(kind, msg)) => {
            let mut cmd = Cli::command();
            cmd.build();
            let name = cli.command.name();
            match cmd.find_subcommand_mut(name) {
                Some(sub) => sub.error(kind, msg).exit(),
                None => cmd.error(kind, msg).exit(),
            }
        }
        Err(CliError::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
