//! Head-to-head comparisons and the artifact plumbing behind the command
//! line tool.
//!
//! Every `*_to_dir` function writes its files into an output directory and
//! hands back the in-memory result, so a caller can decide the exit status.

use std::fs;
use std::io;
use std::path::{Path as FsPath, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::GridEnvironment;
use crate::objective::evaluate;
use crate::oracle::{default_candidates, enumerate_best, OracleResult};
use crate::replan::{run_scenario, ReplanOutcome, ReplanTrace, DEFAULT_SPEED};
use crate::scenario::{presets, ScenarioSpec};
use crate::solver::{solve, Algorithm, RunResult};
use crate::svg::{render_storyboard, render_svg};

/// Environment variable that caps how many runs `compare` executes at once.
pub const THREADS_VAR: &str = "GRIDPATH_THREADS";

/// Value written in the seed column of aggregate CSV rows.
pub const AGGREGATE_SEED: &str = "mean";

/// One CSV row: a single optimizer run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub scenario: String,
    pub algorithm: Algorithm,
    pub seed: Option<u64>,
    pub best_value: f64,
    pub distance_term: f64,
    pub smoothness_term: f64,
    pub safety_term: f64,
    pub penalty_term: f64,
    pub feasible: bool,
    pub iterations: usize,
    pub evaluations: usize,
    pub wall_time_ms: f64,
}

impl RunRecord {
    pub fn from_result(scenario: &str, r: &RunResult) -> Self {
        Self {
            scenario: scenario.to_string(),
            algorithm: r.algorithm,
            seed: r.seed,
            best_value: r.best_value.total,
            distance_term: r.best_value.distance_term,
            smoothness_term: r.best_value.smoothness_term,
            safety_term: r.best_value.safety_term,
            penalty_term: r.best_value.penalty_term,
            feasible: r.best_value.feasible,
            iterations: r.iterations_used,
            evaluations: r.evaluations_used,
            wall_time_ms: r.wall_time.as_secs_f64() * 1e3,
        }
    }
}

/// Summary of all runs of one algorithm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub algorithm: Algorithm,
    pub runs: usize,
    pub seeds: Vec<u64>,
    pub feasible_runs: usize,
    pub mean_best_value: f64,
    pub min_best_value: f64,
    pub max_best_value: f64,
    pub mean_distance_term: f64,
    pub mean_smoothness_term: f64,
    pub mean_safety_term: f64,
    pub mean_penalty_term: f64,
    pub mean_iterations: f64,
    pub mean_evaluations: f64,
    pub mean_wall_time_ms: f64,
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    sum / n as f64
}

/// Groups records by algorithm (in `Algorithm` order) and summarizes them.
/// Records are taken in the order given.
pub fn aggregate(records: &[RunRecord]) -> Vec<AggregateRow> {
    Algorithm::ALL
        .iter()
        .filter_map(|&algorithm| {
            let rows: Vec<&RunRecord> = records
                .iter()
                .filter(|r| r.algorithm == algorithm)
                .collect();
            if rows.is_empty() {
                return None;
            }
            let m = |f: fn(&RunRecord) -> f64| mean(rows.iter().map(|r| f(r)));
            Some(AggregateRow {
                algorithm,
                runs: rows.len(),
                seeds: rows.iter().filter_map(|r| r.seed).collect(),
                feasible_runs: rows.iter().filter(|r| r.feasible).count(),
                mean_best_value: m(|r| r.best_value),
                min_best_value: rows
                    .iter()
                    .map(|r| r.best_value)
                    .fold(f64::INFINITY, f64::min),
                max_best_value: rows
                    .iter()
                    .map(|r| r.best_value)
                    .fold(f64::NEG_INFINITY, f64::max),
                mean_distance_term: m(|r| r.distance_term),
                mean_smoothness_term: m(|r| r.smoothness_term),
                mean_safety_term: m(|r| r.safety_term),
                mean_penalty_term: m(|r| r.penalty_term),
                mean_iterations: m(|r| r.iterations as f64),
                mean_evaluations: m(|r| r.evaluations as f64),
                mean_wall_time_ms: m(|r| r.wall_time_ms),
            })
        })
        .collect()
}

/// Published objective values and run times for the same three optimizers,
/// kept for side-by-side reading only. They depend on unstated weights,
/// layouts and hardware and are never compared numerically.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceColumn {
    pub environment: String,
    pub ga_value: f64,
    pub ps_value: f64,
    pub pso_value: f64,
    pub ga_time_s: f64,
    pub ps_time_s: f64,
    pub pso_time_s: f64,
}

pub fn reference_columns() -> Vec<ReferenceColumn> {
    let col = |env: &str, v: [f64; 3], t: [f64; 3]| ReferenceColumn {
        environment: env.to_string(),
        ga_value: v[0],
        ps_value: v[1],
        pso_value: v[2],
        ga_time_s: t[0],
        ps_time_s: t[1],
        pso_time_s: t[2],
    };
    vec![
        col(
            "initial",
            [17.8051, 17.3103, 16.9362],
            [0.9310, 0.6800, 2.2300],
        ),
        col(
            "modified",
            [18.4410, 17.7430, 17.7001],
            [1.1180, 0.8310, 2.5590],
        ),
        col(
            "ztype",
            [22.4599, 22.0439, 21.9185],
            [0.9310, 0.7879, 2.5920],
        ),
    ]
}

/// Whether the measured means rank the optimizers the way the published
/// figures do: PSO <= PS <= GA in objective value and PS < GA < PSO in time.
/// Reported only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderingCheck {
    pub value_order_pso_ps_ga: Option<bool>,
    pub time_order_ps_ga_pso: Option<bool>,
    pub note: String,
}

pub fn ordering_check(aggregates: &[AggregateRow]) -> OrderingCheck {
    let find = |a: Algorithm| aggregates.iter().find(|r| r.algorithm == a);
    let (Some(ps), Some(ga), Some(pso)) = (
        find(Algorithm::Ps),
        find(Algorithm::Ga),
        find(Algorithm::Pso),
    ) else {
        return OrderingCheck {
            value_order_pso_ps_ga: None,
            time_order_ps_ga_pso: None,
            note: "ordering needs all three algorithms".into(),
        };
    };
    let value =
        pso.mean_best_value <= ps.mean_best_value && ps.mean_best_value <= ga.mean_best_value;
    let time =
        ps.mean_wall_time_ms < ga.mean_wall_time_ms && ga.mean_wall_time_ms < pso.mean_wall_time_ms;
    let word = |b: bool| if b { "agrees" } else { "disagrees" };
    OrderingCheck {
        value_order_pso_ps_ga: Some(value),
        time_order_ps_ga_pso: Some(time),
        note: format!(
            "objective ranking {} with the published PSO <= PS <= GA; time ranking {} with the published PS < GA < PSO",
            word(value),
            word(time)
        ),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub scenario_name: String,
    /// True when the runs used the environment after all obstacle events.
    pub after_events: bool,
    pub runs: Vec<RunRecord>,
    pub aggregates: Vec<AggregateRow>,
    pub ordering: OrderingCheck,
    pub published_reference: Vec<ReferenceColumn>,
}

impl ComparisonReport {
    pub fn any_feasible(&self) -> bool {
        self.runs.iter().any(|r| r.feasible)
    }

    /// Raw rows first, then one aggregate row per algorithm with
    /// [`AGGREGATE_SEED`] in the seed column and means in the numeric
    /// columns. The aggregate `feasible` cell holds `feasible_runs/runs`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.runs {
            w.serialize(r).map_err(csv_err)?;
        }
        for a in &self.aggregates {
            w.write_record([
                self.scenario_name.clone(),
                a.algorithm.to_string(),
                AGGREGATE_SEED.to_string(),
                format!("{:?}", a.mean_best_value),
                format!("{:?}", a.mean_distance_term),
                format!("{:?}", a.mean_smoothness_term),
                format!("{:?}", a.mean_safety_term),
                format!("{:?}", a.mean_penalty_term),
                format!("{}/{}", a.feasible_runs, a.runs),
                format!("{:?}", a.mean_iterations),
                format!("{:?}", a.mean_evaluations),
                format!("{:?}", a.mean_wall_time_ms),
            ])
            .map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(io::Error::new(io::ErrorKind::InvalidData, e.to_string()))
}

/// Aggregate CSV row as read back from disk.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvAggregate {
    pub algorithm: Algorithm,
    pub mean_best_value: f64,
    pub feasible: String,
    pub mean_wall_time_ms: f64,
}

/// Splits a comparison CSV into raw records and aggregate rows.
pub fn read_comparison_csv(text: &str) -> Result<(Vec<RunRecord>, Vec<CsvAggregate>)> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers().map_err(csv_err)?.clone();
    let mut raw = Vec::new();
    let mut agg = Vec::new();
    for row in reader.records() {
        let row = row.map_err(csv_err)?;
        if row.get(2) == Some(AGGREGATE_SEED) {
            let num = |i: usize| -> Result<f64> {
                row.get(i)
                    .unwrap_or_default()
                    .parse()
                    .map_err(|_| Error::InvalidConfig(format!("bad number in column {i}")))
            };
            agg.push(CsvAggregate {
                algorithm: row.get(1).unwrap_or_default().parse()?,
                mean_best_value: num(3)?,
                feasible: row.get(8).unwrap_or_default().to_string(),
                mean_wall_time_ms: num(11)?,
            });
        } else {
            raw.push(row.deserialize(Some(&headers)).map_err(csv_err)?);
        }
    }
    Ok((raw, agg))
}

/// Settings for [`compare`].
#[derive(Debug, Clone, PartialEq)]
pub struct CompareOptions {
    pub algorithms: Vec<Algorithm>,
    pub seeds: Vec<u64>,
    /// Run on the environment after every obstacle event instead of the
    /// initial one.
    pub after_events: bool,
    /// Worker cap; `None` reads [`THREADS_VAR`] and falls back to rayon's
    /// default.
    pub threads: Option<usize>,
}

impl Default for CompareOptions {
    fn default() -> Self {
        Self {
            algorithms: Algorithm::ALL.to_vec(),
            seeds: (1..=5).collect(),
            after_events: false,
            threads: None,
        }
    }
}

/// Reads the worker cap from [`THREADS_VAR`]; unset, empty or zero means no cap.
pub fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_VAR)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

/// Runs every (algorithm, seed) pair, pattern search once since it is
/// deterministic. Runs may execute concurrently; records come back sorted
/// by algorithm and seed.
pub fn compare(spec: &ScenarioSpec, opts: &CompareOptions) -> Result<ComparisonReport> {
    Ok(compare_runs(spec, opts)?.0)
}

fn compare_env(spec: &ScenarioSpec, opts: &CompareOptions) -> GridEnvironment {
    if opts.after_events {
        spec.scenario.final_env()
    } else {
        spec.env().clone()
    }
}

fn compare_runs(
    spec: &ScenarioSpec,
    opts: &CompareOptions,
) -> Result<(ComparisonReport, Vec<RunResult>)> {
    if opts.algorithms.is_empty() {
        return Err(Error::InvalidConfig("no algorithms to compare".into()));
    }
    let mut jobs: Vec<(Algorithm, Option<u64>)> = Vec::new();
    let mut algorithms = opts.algorithms.clone();
    algorithms.sort();
    algorithms.dedup();
    for &a in &algorithms {
        if a.is_stochastic() {
            if opts.seeds.is_empty() {
                return Err(Error::InvalidConfig(format!("{a} needs at least one seed")));
            }
            jobs.extend(opts.seeds.iter().map(|&s| (a, Some(s))));
        } else {
            jobs.push((a, None));
        }
    }
    let env = compare_env(spec, opts);

    let run_one = |&(a, seed): &(Algorithm, Option<u64>)| -> Result<RunResult> {
        let cfg = spec.algorithm_config(a);
        let cfg = match seed {
            Some(s) => cfg.with_seed(s),
            None => cfg,
        };
        solve(&env, &spec.objective, &cfg, None)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads.or_else(threads_from_env).unwrap_or(0))
        .build()
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;
    let results: Vec<RunResult> =
        pool.install(|| jobs.par_iter().map(run_one).collect::<Result<_>>())?;

    let mut runs: Vec<RunRecord> = results
        .iter()
        .map(|r| RunRecord::from_result(&spec.name, r))
        .collect();
    runs.sort_by_key(|r| (r.algorithm, r.seed));
    let aggregates = aggregate(&runs);
    let ordering = ordering_check(&aggregates);
    let report = ComparisonReport {
        scenario_name: spec.name.clone(),
        after_events: opts.after_events,
        runs,
        aggregates,
        ordering,
        published_reference: reference_columns(),
    };
    Ok((report, results))
}

/// Accepts `1,2,3`, `1..5` (inclusive) or a mix such as `1..3,10`.
pub fn parse_seeds(text: &str) -> Result<Vec<u64>> {
    let bad = || Error::InvalidConfig(format!("cannot read seeds from '{text}'"));
    let mut seeds = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once("..") {
            Some((lo, hi)) => {
                let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
                let hi: u64 = hi
                    .trim()
                    .trim_start_matches('=')
                    .parse()
                    .map_err(|_| bad())?;
                if hi < lo {
                    return Err(bad());
                }
                seeds.extend(lo..=hi);
            }
            None => seeds.push(part.parse().map_err(|_| bad())?),
        }
    }
    if seeds.is_empty() {
        return Err(bad());
    }
    Ok(seeds)
}

pub fn parse_algorithms(text: &str) -> Result<Vec<Algorithm>> {
    text.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(str::parse)
        .collect()
}

/// Loads a scenario file, or a bundled scenario when `arg` names one and no
/// such file exists.
pub fn resolve_scenario(arg: &str) -> Result<ScenarioSpec> {
    let path = PathBuf::from(arg);
    if !path.exists() {
        if let Some(spec) = presets::by_name(arg) {
            return Ok(spec);
        }
    }
    ScenarioSpec::load(&path)
}

fn write(dir: &FsPath, name: &str, contents: &str) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(name), contents)?;
    Ok(())
}

fn pretty<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

#[derive(Debug, Serialize)]
struct Metadata<'a> {
    scenario: &'a str,
    algorithm: Algorithm,
    seed: Option<u64>,
    wall_time_ms: f64,
    finished_unix_s: u64,
}

/// Single run: `result.json` (deterministic), `metadata.json` (timing) and
/// `path.svg`.
pub fn solve_to_dir(
    spec: &ScenarioSpec,
    algorithm: Algorithm,
    seed: Option<u64>,
    out: &FsPath,
) -> Result<RunResult> {
    let cfg = spec.algorithm_config(algorithm);
    let cfg = match seed {
        Some(s) => cfg.with_seed(s),
        None => cfg,
    };
    let result = solve(spec.env(), &spec.objective, &cfg, None)?;
    write(out, "result.json", &format!("{}\n", result.to_json()?))?;
    let meta = Metadata {
        scenario: &spec.name,
        algorithm,
        seed: result.seed,
        wall_time_ms: result.wall_time.as_secs_f64() * 1e3,
        finished_unix_s: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
    };
    write(out, "metadata.json", &pretty(&meta)?)?;
    let label = match result.seed {
        Some(s) => format!("{algorithm} (seed {s})"),
        None => algorithm.to_string(),
    };
    write(
        out,
        "path.svg",
        &render_svg(spec.env(), &[(result.best_path.clone(), label.as_str())]),
    )?;
    Ok(result)
}

/// `comparison.csv` and `comparison.json`, plus `paths.svg` with the best
/// run of each algorithm.
pub fn compare_to_dir(
    spec: &ScenarioSpec,
    opts: &CompareOptions,
    out: &FsPath,
) -> Result<ComparisonReport> {
    let (report, results) = compare_runs(spec, opts)?;
    write(out, "comparison.csv", &report.to_csv()?)?;
    write(out, "comparison.json", &pretty(&report)?)?;

    // best run per algorithm; the first seed wins ties
    let mut best: Vec<&RunResult> = Vec::new();
    for r in &results {
        match best.iter_mut().find(|b| b.algorithm == r.algorithm) {
            Some(b) if r.best_value.total < b.best_value.total => *b = r,
            Some(_) => {}
            None => best.push(r),
        }
    }
    best.sort_by_key(|r| r.algorithm);
    let labels: Vec<String> = best
        .iter()
        .map(|r| format!("{} {:.4}", r.algorithm, r.best_value.total))
        .collect();
    let paths: Vec<_> = best
        .iter()
        .zip(&labels)
        .map(|(r, l)| (r.best_path.clone(), l.as_str()))
        .collect();
    write(
        out,
        "paths.svg",
        &render_svg(&compare_env(spec, opts), &paths),
    )?;
    Ok(report)
}

/// Dynamic replanning run: `trace.jsonl` and `storyboard.svg`.
pub fn replay_to_dir(
    spec: &ScenarioSpec,
    algorithm: Algorithm,
    seed: Option<u64>,
    out: &FsPath,
) -> Result<ReplanTrace> {
    let cfg = spec.algorithm_config(algorithm);
    let cfg = match seed {
        Some(s) => cfg.with_seed(s),
        None => cfg,
    };
    let trace = run_scenario(&spec.scenario, &cfg, &spec.objective, DEFAULT_SPEED)?;
    write(out, "trace.jsonl", &trace.to_jsonl()?)?;
    write(out, "storyboard.svg", &render_storyboard(&trace))?;
    Ok(trace)
}

pub fn replay_succeeded(trace: &ReplanTrace) -> bool {
    trace.outcome != ReplanOutcome::PlanningFailed
}

/// Exhaustive search over free cell centers: `oracle.json`.
pub fn oracle_to_dir(spec: &ScenarioSpec, out: &FsPath) -> Result<(OracleResult, bool)> {
    let env = spec.env();
    let result = enumerate_best(env, &spec.objective, &default_candidates(env))?;
    let feasible = evaluate(&result.best_path, env, &spec.objective).feasible;
    write(out, "oracle.json", &pretty(&result)?)?;
    Ok((result, feasible))
}
