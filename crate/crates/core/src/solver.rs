//! Runs any of the three optimizers on a path-planning problem.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::encoding::vector_to_path;
use crate::error::{Error, Result};
use crate::ga::{self, GaConfig};
use crate::grid::GridEnvironment;
use crate::objective::{evaluate, ObjectiveConfig, ObjectiveValue, Path};
use crate::optimizer::{is_monotone_non_increasing, PathProblem, Termination, TracePoint};
use crate::ps::{self, straight_line_x0, PsConfig};
use crate::pso::{self, PsoConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Ps,
    Ga,
    Pso,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Ps, Algorithm::Ga, Algorithm::Pso];

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Ps => "ps",
            Algorithm::Ga => "ga",
            Algorithm::Pso => "pso",
        }
    }

    pub fn is_stochastic(&self) -> bool {
        !matches!(self, Algorithm::Ps)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ps" => Ok(Algorithm::Ps),
            "ga" => Ok(Algorithm::Ga),
            "pso" => Ok(Algorithm::Pso),
            other => Err(Error::InvalidConfig(format!(
                "unknown algorithm '{other}' (expected ps, ga or pso)"
            ))),
        }
    }
}

/// Optimizer choice together with its settings.
#[derive(Debug, Clone, PartialEq)]
pub enum AlgorithmConfig {
    Ps(PsConfig),
    Ga(GaConfig),
    Pso(PsoConfig),
}

impl AlgorithmConfig {
    pub fn algorithm(&self) -> Algorithm {
        match self {
            AlgorithmConfig::Ps(_) => Algorithm::Ps,
            AlgorithmConfig::Ga(_) => Algorithm::Ga,
            AlgorithmConfig::Pso(_) => Algorithm::Pso,
        }
    }

    /// Seed of a stochastic optimizer, `None` for pattern search.
    pub fn seed(&self) -> Option<u64> {
        match self {
            AlgorithmConfig::Ps(_) => None,
            AlgorithmConfig::Ga(c) => Some(c.seed),
            AlgorithmConfig::Pso(c) => Some(c.seed),
        }
    }

    /// Copy with the seed replaced; pattern search is unchanged.
    pub fn with_seed(&self, seed: u64) -> Self {
        match self {
            AlgorithmConfig::Ps(c) => AlgorithmConfig::Ps(c.clone()),
            AlgorithmConfig::Ga(c) => AlgorithmConfig::Ga(GaConfig { seed, ..c.clone() }),
            AlgorithmConfig::Pso(c) => AlgorithmConfig::Pso(PsoConfig { seed, ..c.clone() }),
        }
    }
}

/// Result of planning one path. `wall_time` covers the optimizer only and is
/// left out of the serialized form so that identical runs serialize
/// identically.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub algorithm: Algorithm,
    pub seed: Option<u64>,
    pub best_path: Path,
    pub best_value: ObjectiveValue,
    pub iterations_used: usize,
    pub evaluations_used: usize,
    pub termination: Termination,
    pub trace: Vec<TracePoint>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl RunResult {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn trace_is_monotone(&self) -> bool {
        is_monotone_non_increasing(&self.trace)
    }
}

/// Plans a path from `env.start()` to `env.target()`.
///
/// `warm_start` seeds the search with a known decision vector: pattern search
/// starts from it, the GA encodes it into one chromosome and PSO places one
/// particle on it. Without it, pattern search starts from the straight line.
pub fn solve(
    env: &GridEnvironment,
    obj_cfg: &ObjectiveConfig,
    algo: &AlgorithmConfig,
    warm_start: Option<&[f64]>,
) -> Result<RunResult> {
    let problem = PathProblem::new(env, obj_cfg)?;
    let started = Instant::now();
    let (outcome, seed) = match algo {
        AlgorithmConfig::Ps(cfg) => {
            let x0 = match warm_start {
                Some(w) => w.to_vec(),
                None => straight_line_x0(env.start(), env.target(), obj_cfg.n_points),
            };
            (ps::run(cfg, &problem, &x0)?.outcome, None)
        }
        AlgorithmConfig::Ga(cfg) => (ga::run(cfg, &problem, warm_start)?, Some(cfg.seed)),
        AlgorithmConfig::Pso(cfg) => (pso::run(cfg, &problem, warm_start)?, Some(cfg.seed)),
    };
    let wall_time = started.elapsed();
    let best_path = vector_to_path(&outcome.best_point, env, obj_cfg.n_points)?;
    let best_value = evaluate(&best_path, env, obj_cfg);
    Ok(RunResult {
        algorithm: algo.algorithm(),
        seed,
        best_path,
        best_value,
        iterations_used: outcome.iterations,
        evaluations_used: outcome.evaluations,
        termination: outcome.termination,
        trace: outcome.trace,
        wall_time,
    })
}
