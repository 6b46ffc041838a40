//! Argument parsing, dispatch and report emission for the `finq` binary.

mod commands;
mod output;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use commands::{load_graph, load_group};
pub use output::{exact_cyclotomic, exact_rational, parse_cyclotomic};

/// Directory searched for `<name>.json` group and graph files before the built-ins.
pub const FIXTURE_DIR_VAR: &str = "FINQ_FIXTURE_DIR";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Finq(#[from] finq::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Finq(e) => e.kind(),
            CliError::Io(_) | CliError::Csv(_) => "IoError",
            CliError::Json(_) => "ParseError",
            CliError::Usage(_) => "UsageError",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "finq", version, about = "Exact finite-group quantum mechanics toolkit")]
pub struct Cli {
    /// Output format; csv is available for tabular commands.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Seed for every randomized step.
    #[arg(long, default_value_t = 1, global = true)]
    pub seed: u64,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Parallelism hint; the current pipeline runs on one thread.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Add wall-clock time to the report, which makes it non-reproducible.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Orbitals of a permutation group as (0,1) matrices.
    Orbitals(GroupArgs),
    /// Structure tables, determinant factors and invariant forms.
    Forms(GroupArgs),
    /// Born probability between two natural state vectors.
    Born(BornArgs),
    /// Boolean relation analysis for cellular automata.
    #[command(subcommand)]
    Relations(RelationsCommand),
    /// Phase portrait of a symmetric rule on a graph.
    Portrait(PortraitArgs),
    /// Path sums over roots of unity.
    Pathsum(PathsumArgs),
    /// Binomial spacetime model, exact and continuum.
    Spacetime(SpacetimeArgs),
    /// Built-in groups, graphs, character tables and matrices.
    #[command(subcommand)]
    Fixtures(FixturesCommand),
}

#[derive(Args, Debug)]
pub struct GroupArgs {
    /// Fixture name or path to a group JSON file.
    #[arg(long)]
    pub group: String,
}

#[derive(Args, Debug)]
pub struct BornArgs {
    #[arg(long)]
    pub group: String,
    /// 1-based component index in the decomposition.
    #[arg(long, required_unless_present = "coeffs")]
    pub component: Option<usize>,
    /// Form coefficients over the orbital basis, separated by `;`.
    #[arg(long, conflicts_with = "component")]
    pub coeffs: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub m: String,
    #[arg(long, allow_hyphen_values = true)]
    pub n: String,
    /// Sum the Galois conjugates of an irrational component.
    #[arg(long)]
    pub combine_conjugates: bool,
}

#[derive(Subcommand, Debug)]
pub enum RelationsCommand {
    /// Canonical decomposition of an elementary rule or a relation file.
    Decompose {
        #[arg(long, required_unless_present = "file", conflicts_with = "file")]
        rule: Option<u8>,
        #[arg(long)]
        file: Option<PathBuf>,
        /// Levels of recursion into the consequences.
        #[arg(long, default_value_t = 0)]
        depth: usize,
    },
    /// Reducibility census of the 256 elementary rules.
    Classify,
    /// Decomposition of the Game of Life relation.
    Life,
}

#[derive(Args, Debug)]
pub struct PortraitArgs {
    /// Fixture name or path to a graph JSON file.
    #[arg(long)]
    pub graph: String,
    /// `B…/S…` counts or a decimal lookup number.
    #[arg(long)]
    pub rule: String,
    /// Symmetry group; defaults to the fixture group of a known graph.
    #[arg(long)]
    pub group: Option<String>,
}

#[derive(Args, Debug)]
pub struct PathsumArgs {
    /// Order of the root of unity.
    #[arg(long = "M")]
    pub m: u32,
    /// Number of time steps; with --find-destructive, the family's time cap.
    #[arg(long = "T", default_value_t = 20)]
    pub t: u32,
    /// Comma-separated `position:phase` sources.
    #[arg(long, allow_hyphen_values = true, default_value = "0:0")]
    pub sources: String,
    /// Also draw the normalized profile as an SVG bar chart.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Search orders 1..=M for the smallest destructive two-source setup.
    #[arg(long)]
    pub find_destructive: bool,
    /// Largest source distance from the origin in the destructive search.
    #[arg(long, default_value_t = 4)]
    pub max_distance: u32,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("mode").required(true).multiple(true).args(["exact", "approx"]))]
pub struct SpacetimeArgs {
    /// Exact conditional probabilities at interior points.
    #[arg(long)]
    pub exact: bool,
    /// Continuum approximation, maximized per time slice on a grid.
    #[arg(long)]
    pub approx: bool,
    #[arg(long = "T")]
    pub t: i64,
    #[arg(long = "X", allow_hyphen_values = true)]
    pub x: i64,
    /// Drift velocity of the continuum model.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub v: f64,
    /// Grid spacing for the continuum maximum.
    #[arg(long, default_value_t = 0.01)]
    pub step: f64,
}

#[derive(Subcommand, Debug)]
pub enum FixturesCommand {
    /// Names of every fixture.
    List,
    /// Contents of one fixture.
    Show { name: String },
    /// Raw group or graph file, accepted back by `--group` and `--graph`.
    Export {
        name: String,
        #[arg(long, value_enum, default_value_t = ExportKind::Group)]
        kind: ExportKind,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExportKind {
    Group,
    Graph,
}

/// Rows for `--format csv`.
pub(crate) struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub(crate) struct Outcome {
    pub inputs: Value,
    pub result: Value,
    pub table: Option<Table>,
    /// Print `result` alone instead of wrapping it in a report.
    pub raw: bool,
}

impl Outcome {
    pub fn new(inputs: Value, result: Value) -> Self {
        Outcome {
            inputs,
            result,
            table: None,
            raw: false,
        }
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{text}")
            } else {
                write!(stdout, "{text}")
            };
            return e.exit_code().clamp(0, 255) as u8;
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let body = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
            let _ = writeln!(stderr, "{body}");
            e.exit_code()
        }
    }
}

fn command_name(cmd: &Command) -> String {
    match cmd {
        Command::Orbitals(_) => "orbitals".into(),
        Command::Forms(_) => "forms".into(),
        Command::Born(_) => "born".into(),
        Command::Relations(r) => match r {
            RelationsCommand::Decompose { .. } => "relations decompose".into(),
            RelationsCommand::Classify => "relations classify".into(),
            RelationsCommand::Life => "relations life".into(),
        },
        Command::Portrait(_) => "portrait".into(),
        Command::Pathsum(_) => "pathsum".into(),
        Command::Spacetime(_) => "spacetime".into(),
        Command::Fixtures(f) => match f {
            FixturesCommand::List => "fixtures list".into(),
            FixturesCommand::Show { .. } => "fixtures show".into(),
            FixturesCommand::Export { .. } => "fixtures export".into(),
        },
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> CliResult<()> {
    let start = Instant::now();
    let outcome = commands::dispatch(cli)?;
    let name = command_name(&cli.command);
    let text = match cli.format {
        Format::Csv => {
            let table = outcome
                .table
                .ok_or_else(|| CliError::Usage(format!("`{name}` has no csv output")))?;
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&table.header)?;
            for row in &table.rows {
                w.write_record(row)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| e.into_error())?)
                .expect("csv output is utf-8")
        }
        Format::Json if outcome.raw => serde_json::to_string_pretty(&outcome.result)? + "\n",
        Format::Json => {
            let mut report = json!({
                "command": name,
                "inputs": outcome.inputs,
                "seed": cli.seed,
                "result": outcome.result,
            });
            if cli.timing {
                report["timing_ms"] = json!(start.elapsed().as_secs_f64() * 1e3);
            }
            serde_json::to_string_pretty(&report)? + "\n"
        }
    };
    match &cli.out {
        Some(path) => fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}
