mod input;
mod report;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use skewrank::enumeration::{
    enumerate_graphs, search_extremal, verify_theorem, Direction, Expression, VerificationReport,
    VerifyConfig,
};
use skewrank::format::{encode_digraph6, encode_graph6};
use skewrank::reductions::{replay, structural_skew_rank, ReductionCertificate, ReplayCheck};
use skewrank::TheoremId;

const OK: u8 = 0;
const COUNTEREXAMPLE: u8 = 1;
const USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "skewrank",
    version,
    about = "Skew-rank and independence-number invariants of oriented graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphInput {
    /// digraph6 string, optionally with the >>digraph6<< header
    digraph6: Option<String>,
    /// arc-list file: "n m" then m lines "tail head"
    #[arg(long, conflicts_with = "digraph6")]
    arcs: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Full invariant and bound report for one oriented graph
    Analyze {
        #[command(flatten)]
        input: GraphInput,
        /// add decimal approximations of the exact bounds
        #[arg(long)]
        float_view: bool,
    },
    /// Check a claim over all connected graphs up to n-max
    Verify {
        #[arg(long)]
        theorem: TheoremId,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// worker threads, 0 for all cores, 1 for sequential
        #[arg(long, env = "SKEWRANK_WORKERS", default_value_t = 0)]
        workers: usize,
        /// orientations sampled per size above n = 6
        #[arg(long)]
        samples: Option<usize>,
        /// check one orientation per switching class
        #[arg(long)]
        switching_prune: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Reduction certificate for one oriented graph, replayed against exact ranks
    Reduce {
        #[command(flatten)]
        input: GraphInput,
    },
    /// graph6 lines, one per isomorphism class
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        connected: bool,
    },
    /// Graphs and orientations attaining the extreme value of an expression
    Extremal {
        /// one of sr, sr+2a, sr+a, sr-a, sr/a, sr*a
        #[arg(long)]
        expr: Expression,
        #[arg(long, default_value = "max")]
        direction: Direction,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        connected: bool,
    },
}

#[derive(Serialize)]
struct ReduceOutput {
    input: String,
    certificate: ReductionCertificate,
    replay: ReplayCheck,
}

fn print_json(value: &impl Serialize) -> io::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)
}

fn census_csv(report: &VerificationReport) -> Result<(), Box<dyn std::error::Error>> {
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    w.write_record(["theorem_id", "graph6", "equality_orientations"])?;
    let id = report.theorem_id.to_string();
    for (g6, count) in &report.equality_census {
        w.write_record([id.as_str(), g6.as_str(), count.to_string().as_str()])?;
    }
    w.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Analyze { input, float_view } => {
            let g = input::read_input(input.digraph6.as_deref(), input.arcs.as_deref())?;
            print_json(&report::analyze(&g, float_view))?;
            Ok(OK)
        }
        Command::Verify {
            theorem,
            n_max,
            seed,
            workers,
            samples,
            switching_prune,
            format,
        } => {
            let config = VerifyConfig {
                theorem,
                n_max,
                seed,
                workers,
                samples,
                switching_prune,
            };
            let report = verify_theorem(&config)?;
            match format {
                Format::Json => print_json(&report)?,
                Format::Csv => {
                    census_csv(&report)?;
                    if !report.passed() {
                        eprintln!("{} counterexamples", report.counterexamples.len());
                    }
                }
            }
            Ok(if report.passed() { OK } else { COUNTEREXAMPLE })
        }
        Command::Reduce { input } => {
            let g = input::read_input(input.digraph6.as_deref(), input.arcs.as_deref())?;
            let certificate = structural_skew_rank(&g);
            let replay = replay(&g, &certificate);
            let ok = replay.ok();
            print_json(&ReduceOutput {
                input: encode_digraph6(&g),
                certificate,
                replay,
            })?;
            Ok(if ok { OK } else { COUNTEREXAMPLE })
        }
        Command::Enumerate { n, connected } => {
            let mut out = io::stdout().lock();
            for g in enumerate_graphs(n, connected)? {
                writeln!(out, "{}", encode_graph6(&g))?;
            }
            Ok(OK)
        }
        Command::Extremal {
            expr,
            direction,
            n,
            connected,
        } => {
            print_json(&search_extremal(expr, direction, n, connected)?)?;
            Ok(OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("skewrank: {e}");
            ExitCode::from(USAGE)
        }
    }
}
