//! `setram` command line: every command prints one JSON [`RunReport`].
//!
//! Exit codes: 0 success, 1 verified negative, 2 usage or input error,
//! 3 budget or size limit hit.

pub mod acceptance;
mod commands;
mod input;

use std::io::Read;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use setram_core::cover::CoverError;
use setram_core::ramsey::{RamseyError, TargetGraph};
use setram_core::ryser::HypergraphError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("input: {0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) | Self::Input(_) => EXIT_USAGE,
            Self::Budget(_) => EXIT_BUDGET,
            Self::Internal(_) => EXIT_NEGATIVE,
        }
    }
}

impl From<CoverError> for CliError {
    fn from(e: CoverError) -> Self {
        match e {
            CoverError::BudgetExceeded { .. } | CoverError::TooLarge { .. } => Self::Budget(e.to_string()),
            CoverError::Internal(_) => Self::Internal(e.to_string()),
            _ => Self::Usage(e.to_string()),
        }
    }
}

impl From<RamseyError> for CliError {
    fn from(e: RamseyError) -> Self {
        match e {
            RamseyError::Internal(_) => Self::Internal(e.to_string()),
            _ => Self::Usage(e.to_string()),
        }
    }
}

impl From<HypergraphError> for CliError {
    fn from(e: HypergraphError) -> Self {
        match e {
            HypergraphError::BudgetExceeded(_) => Self::Budget(e.to_string()),
            HypergraphError::Cover(c) => c.into(),
            HypergraphError::Parse { .. } => Self::Input(e.to_string()),
            _ => Self::Usage(e.to_string()),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: Value,
    pub outcome: Value,
    pub wall_ms: u64,
    pub seed: u64,
    pub version: String,
}

/// What a finished invocation wants written and returned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "setram", version, about = "Tree covers and set-Ramsey numbers of set-coloured graphs")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Indent the JSON report.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a named colouring.
    Construct(ConstructArgs),
    /// Cover a colouring with monochromatic trees.
    Cover(CoverArgs),
    /// Partition a colouring into monochromatic paths or cycles.
    Partition(PartitionArgs),
    /// Criticality report for tree cover number 2 or 3.
    Critical(CriticalArgs),
    #[command(subcommand)]
    Ramsey(RamseyCommand),
    #[command(subcommand)]
    Ryser(RyserCommand),
    /// Check a certificate against a colouring.
    Verify(VerifyArgs),
    /// Run the acceptance suite.
    Accept(AcceptArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructKind {
    AffineTreeCover,
    TuranAffine,
    TwoMissing,
    BipartiteSubsets,
    BipartiteTuples,
    DoublingCycle,
    Code,
    PathPartitionLb,
    Random,
}

#[derive(Args, Debug, Serialize)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub kind: ConstructKind,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Second side for bipartite hosts.
    #[arg(long)]
    pub m: Option<usize>,
    /// Order of the affine plane (a prime).
    #[arg(long)]
    pub q: Option<usize>,
    /// Odd cycle length.
    #[arg(long)]
    pub l: Option<usize>,
    /// Vertices (random colourings).
    #[arg(long)]
    pub n: Option<usize>,
    /// Also check the property the construction is known for.
    #[arg(long)]
    pub check: bool,
    /// Node budget for `--check`.
    #[arg(long, default_value_t = setram_core::cover::DEFAULT_NODE_BUDGET)]
    pub budget: u64,
    /// Print the colouring in the text file form instead of a report.
    #[arg(long)]
    pub text: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum CoverMode {
    Exact,
    Construct,
}

#[derive(Args, Debug, Serialize)]
pub struct CoverArgs {
    #[arg(value_enum)]
    pub mode: CoverMode,
    /// Colouring file, or `-` for standard input.
    pub file: String,
    #[arg(long, default_value_t = setram_core::cover::DEFAULT_NODE_BUDGET)]
    pub budget: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum PartitionMode {
    Paths,
    Cycles,
}

#[derive(Args, Debug, Serialize)]
pub struct PartitionArgs {
    #[arg(value_enum)]
    pub mode: PartitionMode,
    pub file: String,
}

#[derive(Args, Debug, Serialize)]
pub struct CriticalArgs {
    pub file: String,
    #[arg(long)]
    pub t: usize,
    #[arg(long, default_value_t = setram_core::cover::DEFAULT_NODE_BUDGET)]
    pub budget: u64,
}

#[derive(Args, Debug, Serialize, Clone)]
pub struct RamseyParams {
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub k: usize,
    /// `K<t>` or `C<l>`, e.g. K3 or C5.
    #[arg(long, default_value = "K3")]
    pub target: TargetGraph,
}

#[derive(Args, Debug, Serialize, Clone)]
pub struct SearchFlags {
    #[arg(long, default_value_t = setram_core::ramsey::DEFAULT_SEARCH_BUDGET)]
    pub budget: u64,
    /// Wall-clock limit in seconds; hitting it counts as an exhausted budget.
    #[arg(long)]
    pub time_limit: Option<f64>,
    #[arg(long)]
    pub no_symmetry: bool,
    #[arg(long)]
    pub no_degree_prune: bool,
    #[arg(long, env = "RAMSEY_THREADS", default_value_t = 1)]
    pub threads: usize,
}

#[derive(Subcommand, Debug)]
pub enum RamseyCommand {
    /// Decide whether some colouring of K_n avoids a monochromatic target.
    Search {
        #[command(flatten)]
        params: RamseyParams,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        flags: SearchFlags,
    },
    /// Bracket the set-Ramsey number, searching hosts up to `--n-max`.
    Number {
        #[command(flatten)]
        params: RamseyParams,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[command(flatten)]
        flags: SearchFlags,
    },
    /// Closed-form bounds only.
    Bounds {
        #[command(flatten)]
        params: RamseyParams,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum ConvertFrom {
    Hypergraph,
    Colouring,
}

#[derive(Subcommand, Debug, Serialize)]
pub enum RyserCommand {
    /// Hypergraph to intersection colouring, or a saturated colouring back.
    Convert {
        file: String,
        #[arg(long, value_enum, default_value_t = ConvertFrom::Hypergraph)]
        from: ConvertFrom,
    },
    /// Transversal from a constructive tree cover, optionally with the exact one.
    Transversal {
        file: String,
        /// Intersection level; defaults to the hypergraph's own.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
    },
    /// Compare the transversal number with the tree cover number.
    Check {
        file: String,
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
    },
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    pub colouring: String,
    /// A report holding a certificate, or a bare cover/partition certificate.
    pub certificate: String,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Primary,
}

#[derive(Args, Debug, Serialize)]
pub struct AcceptArgs {
    #[arg(long, value_enum, default_value_t = Suite::Primary)]
    pub suite: Suite,
    /// Run only these criteria (comma separated ids).
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<usize>,
}

/// Payload and exit code of a command that ran to completion.
pub(crate) struct Done {
    pub outcome: Value,
    pub code: i32,
    /// Printed instead of the report when set.
    pub raw: Option<String>,
}

impl Done {
    pub fn ok(outcome: Value) -> Self {
        Self { outcome, code: EXIT_OK, raw: None }
    }

    pub fn with_code(outcome: Value, code: i32) -> Self {
        Self { outcome, code, raw: None }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let start = Instant::now();
    let (name, parameters) = describe(&cli.command);
    match commands::dispatch(&cli, stdin) {
        Ok(done) => {
            let stdout = match done.raw {
                Some(raw) => raw,
                None => {
                    let report = RunReport {
                        command: name,
                        parameters,
                        outcome: done.outcome,
                        wall_ms: start.elapsed().as_millis() as u64,
                        seed: cli.seed,
                        version: env!("CARGO_PKG_VERSION").to_string(),
                    };
                    let mut s = if cli.pretty {
                        serde_json::to_string_pretty(&report)
                    } else {
                        serde_json::to_string(&report)
                    }
                    .expect("report serializes");
                    s.push('\n');
                    s
                }
            };
            Outcome { code: done.code, stdout, stderr: String::new() }
        }
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn describe(c: &Command) -> (String, Value) {
    fn v<T: Serialize>(x: &T) -> Value {
        serde_json::to_value(x).expect("arguments serialize")
    }
    match c {
        Command::Construct(a) => ("construct".into(), v(a)),
        Command::Cover(a) => ("cover".into(), v(a)),
        Command::Partition(a) => ("partition".into(), v(a)),
        Command::Critical(a) => ("critical".into(), v(a)),
        Command::Ramsey(RamseyCommand::Search { params, n, flags }) => (
            "ramsey search".into(),
            serde_json::json!({ "params": params, "n": n, "flags": flags }),
        ),
        Command::Ramsey(RamseyCommand::Number { params, n_max, flags }) => (
            "ramsey number".into(),
            serde_json::json!({ "params": params, "n_max": n_max, "flags": flags }),
        ),
        Command::Ramsey(RamseyCommand::Bounds { params }) => {
            ("ramsey bounds".into(), serde_json::json!({ "params": params }))
        }
        Command::Ryser(a) => ("ryser".into(), v(a)),
        Command::Verify(a) => ("verify".into(), v(a)),
        Command::Accept(a) => ("accept".into(), v(a)),
    }
}
