//! Command-line front end: diagram documents, solver commands and reports.

mod document;

use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use limid::bench::{build_ebo_with, ebo_mapping_variants, gen_random_diagram, run_benchmark, RandomSpec};
use limid::credal::limid_to_credal;
use limid::model::{brute_force_meu, expected_utility, normalize_utilities, pure_strategy_count, ModelError};
use limid::reform::{export_lp, generate_bilinear_auto, linearize};
use limid::solver::{solve_meu, spu, SearchOrder, SolveOptions, SolveStatus, SpuInit, WarmStart};
use limid::Diagram;
use thiserror::Error;

pub use document::{
    parse_strategy, read_diagram, strategy_document, DiagramDocument, NodeDocument, ResultDocument, StrategyDocument,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("malformed document: {0}")]
    Format(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("{0}")]
    Solver(String),
}

impl CliError {
    fn in_file(self, path: &Path) -> Self {
        match self {
            CliError::Format(m) => CliError::Format(format!("{}: {m}", path.display())),
            CliError::Invalid(m) => CliError::Invalid(format!("{}: {m}", path.display())),
            other => other,
        }
    }
}

/// Exit code for a finished run that hit a limit.
pub const EXIT_STOPPED: i32 = 2;
/// Exit code for any error.
pub const EXIT_ERROR: i32 = 1;

#[derive(Debug, Parser)]
#[command(name = "limid", version, about = "Optimal strategies for limited memory influence diagrams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Globally optimal strategy by branch and bound.
    Solve(SolveArgs),
    /// Single policy updating from a pure starting strategy.
    Spu(SpuArgs),
    /// Exhaustive search over every pure strategy.
    Brute { path: PathBuf },
    /// Expected utility of the strategy in a result document.
    Eu { path: PathBuf, strategy: PathBuf },
    /// Writes the integer program in LP format.
    ExportLp {
        path: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Writes a random diagram.
    GenRandom(GenArgs),
    /// Writes the built-in planning model.
    Ebo {
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Edge mapping variant.
        #[arg(long, default_value = "default")]
        mapping: String,
    },
    /// Random-diagram benchmark comparing branch and bound with policy updating.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SearchArg {
    BestBound,
    DepthFirst,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    /// Wall-clock limit in seconds.
    #[arg(long)]
    pub time_limit: Option<f64>,
    #[arg(long)]
    pub node_limit: Option<usize>,
    /// Stop once the relative gap in percent is at most this.
    #[arg(long, default_value_t = 0.0)]
    pub gap: f64,
    #[arg(long, value_enum, default_value = "best-bound")]
    pub search: SearchArg,
    #[arg(long)]
    pub no_warm_start: bool,
    /// Record zero elapsed times so that outputs are reproducible.
    #[arg(long)]
    pub no_timing: bool,
}

impl LimitArgs {
    pub fn options(&self) -> Result<SolveOptions, CliError> {
        let time_limit = match self.time_limit {
            Some(t) if !(t >= 0.0 && t.is_finite()) => {
                return Err(CliError::Invalid(format!("--time-limit must be a non-negative number, got {t}")))
            }
            t => t.map(Duration::from_secs_f64),
        };
        if self.gap.is_nan() || self.gap < 0.0 {
            return Err(CliError::Invalid(format!("--gap must be non-negative, got {}", self.gap)));
        }
        Ok(SolveOptions {
            time_limit,
            node_limit: self.node_limit,
            gap_tolerance: self.gap,
            search: match self.search {
                SearchArg::BestBound => SearchOrder::BestBound,
                SearchArg::DepthFirst => SearchOrder::DepthFirst,
            },
            warm_start: if self.no_warm_start { WarmStart::None } else { WarmStart::Spu },
            timing: !self.no_timing,
        })
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub path: PathBuf,
    #[command(flatten)]
    pub limits: LimitArgs,
    /// Writes the branch-and-bound event log (tab separated) to this file.
    #[arg(long)]
    pub log: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InitArg {
    First,
    Last,
    Random,
}

#[derive(Debug, Args)]
pub struct SpuArgs {
    pub path: PathBuf,
    #[arg(long, value_enum, default_value = "first")]
    pub init: InitArg,
    /// Seed of the random initial strategy.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub max_sweeps: usize,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub total: usize,
    #[arg(long)]
    pub decisions: usize,
    /// Defaults to the number of decisions.
    #[arg(long)]
    pub utilities: Option<usize>,
    #[arg(long, default_value_t = 3)]
    pub max_parents: usize,
    #[arg(long, default_value_t = 2)]
    pub domain: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

impl GenArgs {
    fn spec(&self) -> RandomSpec {
        RandomSpec {
            total_nodes: self.total,
            decision_nodes: self.decisions,
            utility_nodes: self.utilities.unwrap_or(self.decisions),
            max_parents: self.max_parents,
            domain_size: self.domain,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Diagram size as TOTALxDECISIONS, repeatable.
    #[arg(long = "spec", required = true, value_parser = parse_size)]
    pub specs: Vec<(usize, usize)>,
    #[arg(long, default_value_t = 30)]
    pub trials: usize,
    /// Seed of the first trial; later trials use the following seeds.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 3)]
    pub max_parents: usize,
    /// Directory receiving the TSV and JSON reports.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub limits: LimitArgs,
}

fn parse_size(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once('x').ok_or_else(|| format!("expected TOTALxDECISIONS, got `{s}`"))?;
    let n = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("`{v}`: {e}"));
    Ok((n(a)?, n(b)?))
}

/// Text for stdout and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Solve(a) => cmd_solve(&a),
        Command::Spu(a) => cmd_spu(&a),
        Command::Brute { path } => cmd_brute(&path),
        Command::Eu { path, strategy } => cmd_eu(&path, &strategy),
        Command::ExportLp { path, out } => cmd_export_lp(&path, out.as_deref()),
        Command::GenRandom(a) => cmd_gen_random(&a),
        Command::Ebo { out, mapping } => cmd_ebo(out.as_deref(), &mapping),
        Command::Bench(a) => cmd_bench(&a),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Writes to `out` when given, otherwise returns the text for stdout.
fn emit(out: Option<&Path>, text: String) -> Result<Outcome, CliError> {
    match out {
        Some(p) => write_file(p, &text).map(|()| Outcome::ok(String::new())),
        None => Ok(Outcome::ok(text)),
    }
}

fn status_code(status: SolveStatus) -> i32 {
    match status {
        SolveStatus::Proven => 0,
        SolveStatus::Stopped => EXIT_STOPPED,
    }
}

fn status_name(status: SolveStatus) -> String {
    match status {
        SolveStatus::Proven => "proven".into(),
        SolveStatus::Stopped => "stopped".into(),
    }
}

pub fn cmd_solve(args: &SolveArgs) -> Result<Outcome, CliError> {
    let diagram = read_diagram(&args.path)?;
    let options = args.limits.options()?;
    let r = solve_meu(&diagram, &options).map_err(|e| CliError::Solver(e.to_string()))?;
    if let Some(path) = &args.log {
        write_file(path, &r.log.to_tsv())?;
    }
    let doc = ResultDocument {
        strategy: strategy_document(&diagram, &r.strategy),
        eu: r.eu,
        upper_bound: Some(r.upper_bound),
        gap_percent: Some(r.gap_percent),
        nodes_evaluated: Some(r.nodes_evaluated),
        status: status_name(r.status),
    };
    Ok(Outcome { stdout: doc.to_json(), code: status_code(r.status) })
}

pub fn cmd_spu(args: &SpuArgs) -> Result<Outcome, CliError> {
    let diagram = read_diagram(&args.path)?;
    let init = match args.init {
        InitArg::First => SpuInit::FirstAlternative,
        InitArg::Last => SpuInit::LastAlternative,
        InitArg::Random => SpuInit::Random(args.seed),
    };
    let r = spu(&diagram, &init.strategy(&diagram), args.max_sweeps).map_err(|e| CliError::Solver(e.to_string()))?;
    let doc = ResultDocument {
        strategy: strategy_document(&diagram, &r.strategy),
        eu: r.eu,
        upper_bound: None,
        gap_percent: None,
        nodes_evaluated: None,
        status: if r.converged { "converged".into() } else { "stopped".into() },
    };
    Ok(Outcome { stdout: doc.to_json(), code: if r.converged { 0 } else { EXIT_STOPPED } })
}

pub fn cmd_brute(path: &Path) -> Result<Outcome, CliError> {
    let diagram = read_diagram(path)?;
    let (strategy, eu) = brute_force_meu(&diagram).map_err(|e| CliError::Solver(e.to_string()))?;
    let count = pure_strategy_count(&diagram).unwrap_or(u128::MAX);
    let doc = ResultDocument {
        strategy: strategy_document(&diagram, &strategy),
        eu,
        upper_bound: Some(eu),
        gap_percent: Some(0.0),
        nodes_evaluated: Some(usize::try_from(count).unwrap_or(usize::MAX)),
        status: "proven".into(),
    };
    Ok(Outcome::ok(doc.to_json()))
}

pub fn cmd_eu(path: &Path, strategy_path: &Path) -> Result<Outcome, CliError> {
    let diagram = read_diagram(path)?;
    let text = std::fs::read_to_string(strategy_path)
        .map_err(|e| CliError::Io(format!("{}: {e}", strategy_path.display())))?;
    let strategy = parse_strategy(&diagram, &text).map_err(|e| e.in_file(strategy_path))?;
    let eu = expected_utility(&diagram, &strategy);
    Ok(Outcome::ok(serde_json::to_string_pretty(&serde_json::json!({ "eu": eu })).expect("json") + "\n"))
}

/// The integer program solved for `diagram`, before any bound changes.
pub fn milp_for(diagram: &Diagram) -> Result<limid::Milp, CliError> {
    let normalized = match normalize_utilities(diagram) {
        Ok((n, _)) => n,
        Err(ModelError::TrivialDiagram { eu }) => {
            return Err(CliError::Invalid(format!(
                "all utilities are equal (every strategy has expected utility {eu}); there is no program to export"
            )))
        }
        Err(e) => return Err(CliError::Invalid(e.to_string())),
    };
    let net = limid_to_credal(&normalized).map_err(|e| CliError::Solver(e.to_string()))?;
    linearize(&generate_bilinear_auto(&net)).map_err(|e| CliError::Solver(e.to_string()))
}

pub fn cmd_export_lp(path: &Path, out: Option<&Path>) -> Result<Outcome, CliError> {
    let diagram = read_diagram(path)?;
    emit(out, export_lp(&milp_for(&diagram)?))
}

pub fn cmd_gen_random(args: &GenArgs) -> Result<Outcome, CliError> {
    let diagram: Diagram = gen_random_diagram(&args.spec()).map_err(|e| CliError::Invalid(e.to_string()))?;
    emit(args.out.as_deref(), DiagramDocument::from_diagram(&diagram).to_json())
}

pub fn cmd_ebo(out: Option<&Path>, mapping: &str) -> Result<Outcome, CliError> {
    let variants = ebo_mapping_variants();
    let config = variants.iter().find(|c| c.label == mapping).ok_or_else(|| {
        let names: Vec<&str> = variants.iter().map(|c| c.label.as_str()).collect();
        CliError::Invalid(format!("unknown mapping `{mapping}`; expected one of {}", names.join(", ")))
    })?;
    let diagram: Diagram = build_ebo_with(config);
    emit(out, DiagramDocument::from_diagram(&diagram).to_json())
}

pub fn cmd_bench(args: &BenchArgs) -> Result<Outcome, CliError> {
    let options = args.limits.options()?;
    let specs: Vec<RandomSpec> = args
        .specs
        .iter()
        .map(|&(total, decisions)| RandomSpec {
            max_parents: args.max_parents,
            ..RandomSpec::balanced(total, decisions, args.seed)
        })
        .collect();
    let report = run_benchmark(&specs, args.trials, &options);
    let tsv = report.to_tsv();
    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        let stem = report.file_stem(args.trials);
        write_file(&dir.join(format!("{stem}.tsv")), &tsv)?;
        write_file(&dir.join(format!("{stem}.json")), &(report.to_json() + "\n"))?;
    }
    Ok(Outcome::ok(tsv))
}

/// Parses `args`, runs the command and returns the exit code, printing to
/// stdout and stderr.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(o) => {
            print!("{}", o.stdout);
            o.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}
