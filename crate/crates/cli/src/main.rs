//! `h2tea`: scripted runs of the hydrogen techno-economic model.
//!
//! Exit codes: 0 ok, 1 internal error, 2 usage or configuration error,
//! 3 metric undefined (no IRR sign change, no break-even in range, ...).

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod manifest;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use h2tea::analysis::Format;
use h2tea::{Execution, Pathway, Scenario};

use manifest::RunManifest;

/// Environment variable naming an alternate defaults file.
pub const DEFAULTS_ENV: &str = "H2TEA_DEFAULTS";

#[derive(Parser, Debug)]
#[command(name = "h2tea", version, about = "Hydrogen production cost and profitability model")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Scenario overlay (JSON); omitted keys keep their defaults
    #[arg(long, global = true, value_name = "PATH")]
    scenario: Option<PathBuf>,

    /// Output format
    #[arg(long, global = true, default_value = "table", value_parser = parse_format)]
    format: Format,

    /// Write output here instead of stdout; the run manifest goes to <PATH>.manifest.json
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Apply the scenario's carbon price and production credits
    #[arg(long, global = true, overrides_with = "no_policy")]
    policy: bool,

    /// Ignore carbon price and credits (default)
    #[arg(long = "no-policy", global = true, overrides_with = "policy")]
    no_policy: bool,

    /// Evaluate sweeps on one thread
    #[arg(long, global = true)]
    serial: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Levelized cost breakdown per pathway
    Lcoh(PathwayArgs),
    /// Net present value at a selling price
    Npv(PriceArgs),
    /// Internal rate of return at a selling price
    Irr(PriceArgs),
    /// Selling price at which NPV is zero
    Breakeven(PathwayArgs),
    /// Delivered cost per transport mode, cheapest marked
    Chain(ChainArgs),
    /// Metric over a one-parameter grid
    Sweep(SweepArgs),
    /// One-at-a-time sensitivity ranked by swing
    Tornado(TornadoArgs),
    /// Data series for a figure (fig1-fig10, fig12, fig13)
    Figure {
        id: String,
    },
    /// Built-in dataset operations
    Dataset {
        #[command(subcommand)]
        action: DatasetAction,
    },
}

#[derive(Subcommand, Debug)]
enum DatasetAction {
    /// Every transcribed table value as (table_id, row, column, low, mid, high, unit)
    Export,
}

#[derive(Args, Debug)]
struct PathwayArgs {
    /// Restrict to these pathways (comma-separated); default all
    #[arg(long, value_delimiter = ',', value_parser = parse_pathway)]
    pathway: Vec<Pathway>,
}

#[derive(Args, Debug)]
struct PriceArgs {
    /// Hydrogen selling price, USD/kg
    #[arg(long)]
    price: f64,

    #[command(flatten)]
    pathways: PathwayArgs,
}

#[derive(Args, Debug)]
struct ChainArgs {
    /// Transport distance, km
    #[arg(long = "distance-km")]
    distance_km: f64,

    /// Candidate modes (comma-separated); default all
    #[arg(long)]
    modes: Option<String>,

    #[command(flatten)]
    pathways: PathwayArgs,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Parameter key: dotted path (pathways.green.capex), pathways.*.field, or short name
    #[arg(long)]
    param: String,

    /// Grid as lo:hi:step (inclusive)
    #[arg(long)]
    range: String,

    /// lcoh, npv, irr, breakeven or delivered_cost
    #[arg(long, default_value = "lcoh")]
    metric: String,

    #[command(flatten)]
    pathways: PathwayArgs,
}

#[derive(Args, Debug)]
struct TornadoArgs {
    /// key=lo:hi (absolute) or key=pct% (relative to base); repeatable. Default: price, capex, feedstock
    #[arg(long)]
    param: Vec<String>,

    #[arg(long, default_value = "npv")]
    metric: String,

    #[arg(long, default_value = "green", value_parser = parse_pathway)]
    pathway: Pathway,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: h2tea::Error| e.to_string())
}

fn parse_pathway(s: &str) -> Result<Pathway, String> {
    s.trim().parse().map_err(|e: h2tea::Error| e.to_string())
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn user(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<h2tea::Error> for Failure {
    fn from(e: h2tea::Error) -> Self {
        use h2tea::Error::*;
        let code = match e {
            Parse { .. }
            | Validation { .. }
            | UnknownParameter(_)
            | Mismatch(_)
            | UnsupportedFigure { .. }
            | EmptyCandidates => 2,
            ZeroOutput | NoSignChange | Bracket { .. } | NoCrossing { .. } | Domain(_) => 3,
            NonConvergence { .. } | Csv(_) => 1,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// Everything a command needs besides its own arguments.
pub struct Context {
    pub scenario: Scenario,
    pub format: Format,
    pub apply_policy: bool,
    pub exec: Execution,
}

/// Rendered primary output, plus an optional trailing error (e.g. some IRRs undefined).
pub struct Output {
    pub text: String,
    pub deferred: Option<Failure>,
}

fn load(global: &GlobalArgs) -> Result<(Scenario, String), Failure> {
    let read = |path: &PathBuf, what: &str| {
        fs::read_to_string(path)
            .map_err(|e| Failure::user(format!("cannot read {what} `{}`: {e}", path.display())))
    };
    let (defaults, source) = match std::env::var_os(DEFAULTS_ENV) {
        Some(p) if !p.is_empty() => {
            let path = PathBuf::from(p);
            (read(&path, "defaults file")?, path.display().to_string())
        }
        _ => (h2tea::scenario::DEFAULTS_JSON.to_string(), "built-in".to_string()),
    };
    let overlay = match &global.scenario {
        Some(path) => read(path, "scenario file")?,
        None => String::new(),
    };
    let scenario = h2tea::load_scenario_with_defaults(&overlay, &defaults).map_err(|e| {
        let mut f = Failure::from(e);
        if let Some(path) = &global.scenario {
            f.message = format!("{}: {}", path.display(), f.message);
        }
        f
    })?;
    Ok((scenario, source))
}

fn run(cli: Cli, args: &[String]) -> Result<(), Failure> {
    let (scenario, source) = load(&cli.global)?;
    let manifest = RunManifest::new(args, &scenario, &source);
    let ctx = Context {
        scenario,
        format: cli.global.format,
        apply_policy: cli.global.policy && !cli.global.no_policy,
        exec: if cli.global.serial {
            Execution::Serial
        } else {
            Execution::Parallel
        },
    };

    let output = match cli.command {
        Command::Lcoh(a) => commands::lcoh(&ctx, &a.pathway)?,
        Command::Npv(a) => commands::npv(&ctx, a.price, &a.pathways.pathway)?,
        Command::Irr(a) => commands::irr(&ctx, a.price, &a.pathways.pathway)?,
        Command::Breakeven(a) => commands::breakeven(&ctx, &a.pathway)?,
        Command::Chain(a) => commands::chain(&ctx, a.distance_km, a.modes.as_deref(), &a.pathways.pathway)?,
        Command::Sweep(a) => commands::sweep(&ctx, &a.param, &a.range, &a.metric, &a.pathways.pathway)?,
        Command::Tornado(a) => commands::tornado(&ctx, &a.param, &a.metric, a.pathway)?,
        Command::Figure { id } => commands::figure(&ctx, &id)?,
        Command::Dataset {
            action: DatasetAction::Export,
        } => commands::dataset_export(&ctx)?,
    };

    match &cli.global.out {
        Some(path) => {
            let write = |p: &PathBuf, text: &str| {
                fs::write(p, text).map_err(|e| Failure::user(format!("cannot write `{}`: {e}", p.display())))
            };
            write(path, &output.text)?;
            let mut side = path.clone().into_os_string();
            side.push(".manifest.json");
            write(&PathBuf::from(side), &manifest.to_json())?;
        }
        None => {
            print!("{}", output.text);
            eprint!("{}", manifest.to_json());
        }
    }
    output.deferred.map_or(Ok(()), Err)
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli, &args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
