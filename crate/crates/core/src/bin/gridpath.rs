use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use gridpath::bench::{self, CompareOptions};
use gridpath::Algorithm;

/// Exit status for runs that completed but found no feasible path.
const INFEASIBLE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "gridpath",
    version,
    about = "Waypoint path planning on grid worlds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one optimizer: result.json, metadata.json, path.svg
    Solve {
        /// Scenario file, or the name of a bundled scenario
        #[arg(long)]
        scenario: String,
        #[arg(long, default_value = "ps")]
        algo: Algorithm,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run several optimizers over several seeds: comparison.csv, comparison.json, paths.svg
    Compare {
        #[arg(long)]
        scenario: String,
        #[arg(long, default_value = "ps,ga,pso")]
        algos: String,
        /// e.g. `1..5` or `1,2,3`
        #[arg(long, default_value = "1..5")]
        seeds: String,
        /// Use the world after all obstacle events
        #[arg(long)]
        after_events: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Move a robot through the scenario, replanning on events: trace.jsonl, storyboard.svg
    Replay {
        #[arg(long)]
        scenario: String,
        #[arg(long, default_value = "ps")]
        algo: Algorithm,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Exhaustive search over free cell centers: oracle.json
    Oracle {
        #[arg(long)]
        scenario: String,
        #[arg(long)]
        out: PathBuf,
    },
}

fn load(arg: &str) -> Result<gridpath::ScenarioSpec> {
    bench::resolve_scenario(arg).with_context(|| format!("reading scenario {arg}"))
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Solve {
            scenario,
            algo,
            seed,
            out,
        } => {
            let spec = load(&scenario)?;
            let r = bench::solve_to_dir(&spec, algo, seed, &out)?;
            println!(
                "{} {}: {:.6} ({} evaluations, {})",
                spec.name,
                algo,
                r.best_value.total,
                r.evaluations_used,
                if r.best_value.feasible {
                    "feasible"
                } else {
                    "infeasible"
                }
            );
            Ok(r.best_value.feasible)
        }
        Command::Compare {
            scenario,
            algos,
            seeds,
            after_events,
            out,
        } => {
            let spec = load(&scenario)?;
            let opts = CompareOptions {
                algorithms: bench::parse_algorithms(&algos)?,
                seeds: bench::parse_seeds(&seeds)?,
                after_events,
                threads: None,
            };
            let report = bench::compare_to_dir(&spec, &opts, &out)?;
            for a in &report.aggregates {
                println!(
                    "{:<4} runs {:>2}  feasible {:>2}  mean {:.4}  min {:.4}  max {:.4}  {:.2} ms",
                    a.algorithm,
                    a.runs,
                    a.feasible_runs,
                    a.mean_best_value,
                    a.min_best_value,
                    a.max_best_value,
                    a.mean_wall_time_ms
                );
            }
            println!("{}", report.ordering.note);
            Ok(report.any_feasible())
        }
        Command::Replay {
            scenario,
            algo,
            seed,
            out,
        } => {
            let spec = load(&scenario)?;
            let trace = bench::replay_to_dir(&spec, algo, seed, &out)?;
            println!(
                "{} steps, {} plans, outcome {:?}",
                trace.steps.len(),
                trace.replan_count(),
                trace.outcome
            );
            Ok(bench::replay_succeeded(&trace))
        }
        Command::Oracle { scenario, out } => {
            let spec = load(&scenario)?;
            let (r, feasible) = bench::oracle_to_dir(&spec, &out)?;
            println!(
                "best {:.6} over {} tuples",
                r.best_value, r.candidates_evaluated
            );
            Ok(feasible)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("no feasible path found");
            ExitCode::from(INFEASIBLE)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
