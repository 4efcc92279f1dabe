//! Exhaustive reference solver over a finite set of candidate waypoints.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{GridEnvironment, Point};
use crate::objective::{evaluate, ObjectiveConfig, Path};

/// Largest number of intermediate waypoints the oracle will enumerate.
pub const MAX_INTERMEDIATE: usize = 3;
/// Largest candidate set the oracle will enumerate.
pub const MAX_CANDIDATES: usize = 36;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub candidates: Vec<Point>,
    pub best_path: Path,
    pub best_value: f64,
    pub candidates_evaluated: usize,
}

fn tuple_at(index: usize, slots: usize, candidates: &[Point]) -> Vec<Point> {
    let mut rest = index;
    let mut out = vec![Point::new(0.0, 0.0); slots];
    for slot in (0..slots).rev() {
        out[slot] = candidates[rest % candidates.len()];
        rest /= candidates.len();
    }
    out
}

/// Evaluates every ordered tuple (with repetition) of intermediate waypoints
/// drawn from `candidates` and returns the cheapest path. Ties go to the
/// tuple that comes first in lexicographic candidate order.
pub fn enumerate_best(
    env: &GridEnvironment,
    cfg: &ObjectiveConfig,
    candidates: &[Point],
) -> Result<OracleResult> {
    cfg.validate()?;
    let slots = cfg.n_points - 2;
    if slots > MAX_INTERMEDIATE {
        return Err(Error::OracleBudget(format!(
            "{slots} intermediate waypoints requested, at most {MAX_INTERMEDIATE} supported"
        )));
    }
    if candidates.len() > MAX_CANDIDATES {
        return Err(Error::OracleBudget(format!(
            "{} candidate points, at most {MAX_CANDIDATES} supported",
            candidates.len()
        )));
    }
    if slots > 0 && candidates.is_empty() {
        return Err(Error::OracleBudget("no candidate points".into()));
    }
    let total = candidates.len().pow(slots as u32);

    let build = |index: usize| -> Path {
        let mut pts = Vec::with_capacity(cfg.n_points);
        pts.push(env.start());
        pts.extend(tuple_at(index, slots, candidates));
        pts.push(env.target());
        Path::new(pts).expect("finite waypoints")
    };

    let (best_index, best_value) = (0..total)
        .into_par_iter()
        .map(|i| (i, evaluate(&build(i), env, cfg).total))
        .reduce(
            || (usize::MAX, f64::INFINITY),
            |a, b| {
                if b.1 < a.1 || (b.1 == a.1 && b.0 < a.0) {
                    b
                } else {
                    a
                }
            },
        );

    Ok(OracleResult {
        candidates: candidates.to_vec(),
        best_path: build(best_index),
        best_value,
        candidates_evaluated: total,
    })
}

/// Centers of all free cells, the default candidate set.
pub fn default_candidates(env: &GridEnvironment) -> Vec<Point> {
    env.free_cell_centers()
}
