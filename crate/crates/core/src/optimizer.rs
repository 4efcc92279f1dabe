//! Shared run-loop contract for the three optimizers.
//!
//! Every optimizer minimizes an [`Objective`] over a box-constrained
//! decision space, records the best value seen after every iteration and
//! reports why it stopped.

use serde::{Deserialize, Serialize};

use crate::encoding::{vector_to_path, Bounds};
use crate::error::{Error, Result};
use crate::grid::GridEnvironment;
use crate::objective::{evaluate, ObjectiveConfig, ObjectiveValue, Path};

/// A cost function over box-bounded real vectors.
pub trait Objective: Sync {
    fn bounds(&self) -> &Bounds;

    fn value(&self, x: &[f64]) -> f64;

    fn dim(&self) -> usize {
        self.bounds().dim()
    }
}

/// Path cost of the waypoints encoded by a decision vector.
#[derive(Debug, Clone)]
pub struct PathProblem<'a> {
    env: &'a GridEnvironment,
    cfg: &'a ObjectiveConfig,
    bounds: Bounds,
}

impl<'a> PathProblem<'a> {
    pub fn new(env: &'a GridEnvironment, cfg: &'a ObjectiveConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Self {
            env,
            cfg,
            bounds: Bounds::for_world(env, cfg.n_points),
        })
    }

    pub fn env(&self) -> &GridEnvironment {
        self.env
    }

    pub fn config(&self) -> &ObjectiveConfig {
        self.cfg
    }

    pub fn path(&self, x: &[f64]) -> Result<Path> {
        vector_to_path(x, self.env, self.cfg.n_points)
    }

    pub fn breakdown(&self, x: &[f64]) -> Result<ObjectiveValue> {
        Ok(evaluate(&self.path(x)?, self.env, self.cfg))
    }
}

impl Objective for PathProblem<'_> {
    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn value(&self, x: &[f64]) -> f64 {
        match self.path(x) {
            Ok(path) => evaluate(&path, self.env, self.cfg).total,
            Err(_) => f64::NAN,
        }
    }
}

/// `sum x_j^2`, the standard smoke-test objective.
#[derive(Debug, Clone)]
pub struct Sphere {
    bounds: Bounds,
}

impl Sphere {
    pub fn new(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        Ok(Self {
            bounds: Bounds::uniform(dim, lo, hi)?,
        })
    }
}

impl Objective for Sphere {
    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn value(&self, x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum()
    }
}

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    MaxIterations,
    MeshLimit,
    XLimit,
    FLimit,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub iteration: usize,
    pub best_value: f64,
}

/// Raw result of one optimizer run.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub best_point: Vec<f64>,
    pub best_value: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub trace: Vec<TracePoint>,
    pub termination: Termination,
}

/// Evaluates and rejects non-finite values.
pub(crate) fn checked_value<O: Objective + ?Sized>(
    objective: &O,
    x: &[f64],
    iteration: usize,
) -> Result<f64> {
    let value = objective.value(x);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFiniteObjective { value, iteration })
    }
}

pub fn is_monotone_non_increasing(trace: &[TracePoint]) -> bool {
    trace.windows(2).all(|w| w[1].best_value <= w[0].best_value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Point;

    #[test]
    fn path_problem_matches_direct_evaluation() {
        let env =
            GridEnvironment::new(10, 10, [45], Point::new(0.5, 0.5), Point::new(9.5, 9.5)).unwrap();
        let cfg = ObjectiveConfig {
            n_points: 3,
            ..ObjectiveConfig::default()
        };
        let problem = PathProblem::new(&env, &cfg).unwrap();
        assert_eq!(problem.dim(), 2);
        let x = [2.0, 7.0];
        let path = Path::new(vec![env.start(), Point::new(2.0, 7.0), env.target()]).unwrap();
        assert_eq!(problem.value(&x), evaluate(&path, &env, &cfg).total);
        assert!(problem.value(&[1.0]).is_nan());
    }

    #[test]
    fn non_finite_values_are_errors() {
        struct Bad(Bounds);
        impl Objective for Bad {
            fn bounds(&self) -> &Bounds {
                &self.0
            }
            fn value(&self, _: &[f64]) -> f64 {
                f64::INFINITY
            }
        }
        let bad = Bad(Bounds::uniform(1, 0.0, 1.0).unwrap());
        assert!(matches!(
            checked_value(&bad, &[0.5], 3),
            Err(Error::NonFiniteObjective { iteration: 3, .. })
        ));
    }
}
