//! Pattern search with a complete coordinate poll.
//!
//! Each iteration polls `center +/- mesh * e_j` for every axis `j`. If the
//! best mesh point improves on the current point it becomes the new current
//! point and the mesh expands; otherwise the current point stays and the mesh
//! contracts. The run stops on the iteration budget, a mesh below
//! `mesh_limit`, or when two consecutive successful polls move the point less
//! than `x_limit` or the value less than `f_limit`. There is no randomness.

use serde::{Deserialize, Serialize};

use crate::encoding::Bounds;
use crate::error::{Error, Result};
use crate::grid::Point;
use crate::optimizer::{checked_value, Objective, Outcome, Termination, TracePoint};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PsConfig {
    pub max_iterations: usize,
    pub mesh_initial: f64,
    pub mesh_limit: f64,
    pub x_limit: f64,
    pub f_limit: f64,
    pub expansion: f64,
    pub contraction: f64,
}

impl Default for PsConfig {
    fn default() -> Self {
        Self {
            max_iterations: 500,
            mesh_initial: 1.0,
            mesh_limit: 1e-6,
            x_limit: 1e-6,
            f_limit: 1e-6,
            expansion: 2.0,
            contraction: 0.5,
        }
    }
}

impl PsConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.expansion > 1.0) {
            return Err(Error::InvalidConfig("expansion must exceed 1".into()));
        }
        if !(self.contraction > 0.0 && self.contraction < 1.0) {
            return Err(Error::InvalidConfig(
                "contraction must lie in (0, 1)".into(),
            ));
        }
        let limits = [
            self.mesh_initial,
            self.mesh_limit,
            self.x_limit,
            self.f_limit,
        ];
        if limits.iter().any(|l| !(*l > 0.0)) {
            return Err(Error::InvalidConfig(
                "mesh_initial, mesh_limit, x_limit and f_limit must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PsState {
    pub current: Vec<f64>,
    pub current_value: f64,
    pub mesh_size: f64,
    pub iteration: usize,
    pub last_successful_point: Vec<f64>,
    pub last_successful_value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PollResult {
    Success {
        best_point: Vec<f64>,
        best_value: f64,
    },
    Failure,
}

/// One completed iteration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsStep {
    pub iteration: usize,
    pub success: bool,
    pub mesh_before: f64,
    pub mesh_after: f64,
    pub current_value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PsReport {
    pub outcome: Outcome,
    pub steps: Vec<PsStep>,
}

/// `2d` mesh points ordered `+e_0, -e_0, +e_1, -e_1, ...`, clamped to bounds.
pub fn make_mesh(center: &[f64], mesh_size: f64, bounds: &Bounds) -> Vec<Vec<f64>> {
    let mut mesh = Vec::with_capacity(2 * center.len());
    for j in 0..center.len() {
        for sign in [1.0, -1.0] {
            let mut p = center.to_vec();
            p[j] = bounds.clamp(j, p[j] + sign * mesh_size);
            mesh.push(p);
        }
    }
    mesh
}

/// Evaluates every mesh point around `state.current`. The first point (in
/// mesh order) attaining the minimum wins; success requires a strict
/// improvement over the current value.
pub fn poll<O: Objective + ?Sized>(state: &PsState, objective: &O) -> Result<PollResult> {
    let mut best: Option<(Vec<f64>, f64)> = None;
    for p in make_mesh(&state.current, state.mesh_size, objective.bounds()) {
        let v = checked_value(objective, &p, state.iteration)?;
        if best.as_ref().is_none_or(|(_, bv)| v < *bv) {
            best = Some((p, v));
        }
    }
    Ok(match best {
        Some((best_point, best_value)) if best_value < state.current_value => PollResult::Success {
            best_point,
            best_value,
        },
        _ => PollResult::Failure,
    })
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn run<O: Objective + ?Sized>(cfg: &PsConfig, objective: &O, x0: &[f64]) -> Result<PsReport> {
    cfg.validate()?;
    if x0.len() != objective.dim() {
        return Err(Error::Dimension {
            expected: objective.dim(),
            actual: x0.len(),
        });
    }
    let mut start = x0.to_vec();
    objective.bounds().clamp_all(&mut start);
    let value = checked_value(objective, &start, 0)?;
    let mut state = PsState {
        current: start.clone(),
        current_value: value,
        mesh_size: cfg.mesh_initial,
        iteration: 0,
        last_successful_point: start,
        last_successful_value: value,
    };
    let mut evaluations = 1;
    let mut trace = vec![TracePoint {
        iteration: 0,
        best_value: value,
    }];
    let mut steps = Vec::new();
    let dim = objective.dim();

    let mut termination = if cfg.max_iterations == 0 {
        Some(Termination::MaxIterations)
    } else if state.mesh_size < cfg.mesh_limit {
        Some(Termination::MeshLimit)
    } else {
        None
    };

    while termination.is_none() {
        let mesh_before = state.mesh_size;
        let polled = if dim == 0 {
            PollResult::Failure
        } else {
            poll(&state, objective)?
        };
        evaluations += 2 * dim;
        state.iteration += 1;

        let success = matches!(polled, PollResult::Success { .. });
        if let PollResult::Success {
            best_point,
            best_value,
        } = polled
        {
            let moved = distance(&best_point, &state.last_successful_point);
            let improved = (state.last_successful_value - best_value).abs();
            state.current = best_point;
            state.current_value = best_value;
            state.mesh_size *= cfg.expansion;
            state.last_successful_point = state.current.clone();
            state.last_successful_value = best_value;
            if moved < cfg.x_limit {
                termination = Some(Termination::XLimit);
            } else if improved < cfg.f_limit {
                termination = Some(Termination::FLimit);
            }
        } else {
            state.mesh_size *= cfg.contraction;
        }

        steps.push(PsStep {
            iteration: state.iteration,
            success,
            mesh_before,
            mesh_after: state.mesh_size,
            current_value: state.current_value,
        });
        trace.push(TracePoint {
            iteration: state.iteration,
            best_value: state.current_value,
        });

        if termination.is_none() {
            if state.mesh_size < cfg.mesh_limit {
                termination = Some(Termination::MeshLimit);
            } else if state.iteration >= cfg.max_iterations {
                termination = Some(Termination::MaxIterations);
            }
        }
    }

    Ok(PsReport {
        outcome: Outcome {
            best_point: state.current,
            best_value: state.current_value,
            iterations: state.iteration,
            evaluations,
            trace,
            termination: termination.expect("loop exits with a reason"),
        },
        steps,
    })
}

/// Intermediate waypoints evenly spaced on the start-target segment.
pub fn straight_line_x0(start: Point, target: Point, n_points: usize) -> Vec<f64> {
    let segments = n_points.max(2) - 1;
    (1..segments)
        .flat_map(|i| {
            let f = i as f64 / segments as f64;
            [
                start.x + f * (target.x - start.x),
                start.y + f * (target.y - start.y),
            ]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optimizer::Sphere;

    fn state_at(x: Vec<f64>, objective: &Sphere, mesh: f64) -> PsState {
        let v = objective.value(&x);
        PsState {
            current: x.clone(),
            current_value: v,
            mesh_size: mesh,
            iteration: 0,
            last_successful_point: x,
            last_successful_value: v,
        }
    }

    #[test]
    fn mesh_points() {
        let b = Bounds::uniform(2, 0.0, 10.0).unwrap();
        let mesh = make_mesh(&[5.0, 5.0], 1.0, &b);
        assert_eq!(
            mesh,
            vec![
                vec![6.0, 5.0],
                vec![4.0, 5.0],
                vec![5.0, 6.0],
                vec![5.0, 4.0]
            ]
        );
        let half = make_mesh(&[5.0, 5.0], 0.5, &b);
        assert_eq!(half[0], vec![5.5, 5.0]);
        assert_eq!(half[3], vec![5.0, 4.5]);
        let b4 = Bounds::uniform(4, 0.0, 10.0).unwrap();
        assert_eq!(make_mesh(&[1.0; 4], 1.0, &b4).len(), 8);
        // clamped at the wall
        assert_eq!(make_mesh(&[9.5, 5.0], 1.0, &b)[0], vec![10.0, 5.0]);
    }

    #[test]
    fn poll_outcomes() {
        let sphere = Sphere::new(2, -10.0, 10.0).unwrap();
        let at_origin = state_at(vec![0.0, 0.0], &sphere, 1.0);
        assert_eq!(poll(&at_origin, &sphere).unwrap(), PollResult::Failure);

        let off = state_at(vec![1.0, 0.0], &sphere, 1.0);
        assert_eq!(
            poll(&off, &sphere).unwrap(),
            PollResult::Success {
                best_point: vec![0.0, 0.0],
                best_value: 0.0
            }
        );

        // (1,1) with mesh 1: (0,1) and (1,0) tie; axis 0 comes first
        let tie = state_at(vec![1.0, 1.0], &sphere, 1.0);
        assert_eq!(
            poll(&tie, &sphere).unwrap(),
            PollResult::Success {
                best_point: vec![0.0, 1.0],
                best_value: 1.0
            }
        );
    }

    #[test]
    fn positive_direction_wins_ties() {
        // |x| is symmetric about the origin: +e_0 and -e_0 tie from x = 0
        // only if current is worse, so shift the objective.
        struct Shifted(Bounds);
        impl Objective for Shifted {
            fn bounds(&self) -> &Bounds {
                &self.0
            }
            fn value(&self, x: &[f64]) -> f64 {
                (x[0].abs() - 1.0).abs()
            }
        }
        let f = Shifted(Bounds::uniform(1, -5.0, 5.0).unwrap());
        let s = PsState {
            current: vec![0.0],
            current_value: 1.0,
            mesh_size: 1.0,
            iteration: 0,
            last_successful_point: vec![0.0],
            last_successful_value: 1.0,
        };
        assert_eq!(
            poll(&s, &f).unwrap(),
            PollResult::Success {
                best_point: vec![1.0],
                best_value: 0.0
            }
        );
    }

    #[test]
    fn origin_stops_on_mesh_limit() {
        let sphere = Sphere::new(2, -10.0, 10.0).unwrap();
        let r = run(&PsConfig::default(), &sphere, &[0.0, 0.0]).unwrap();
        assert_eq!(r.outcome.termination, Termination::MeshLimit);
        assert_eq!(r.outcome.best_point, vec![0.0, 0.0]);
        assert!(r.steps.iter().all(|s| !s.success));
    }

    #[test]
    fn empty_budget_returns_x0() {
        let sphere = Sphere::new(2, -10.0, 10.0).unwrap();
        let cfg = PsConfig {
            max_iterations: 0,
            ..PsConfig::default()
        };
        let r = run(&cfg, &sphere, &[3.0, 4.0]).unwrap();
        assert_eq!(r.outcome.best_point, vec![3.0, 4.0]);
        assert_eq!(r.outcome.best_value, 25.0);
        assert_eq!(r.outcome.iterations, 0);
        assert_eq!(r.outcome.evaluations, 1);
    }

    #[test]
    fn quadratic_from_eight() {
        let sphere = Sphere::new(2, -10.0, 10.0).unwrap();
        let r = run(&PsConfig::default(), &sphere, &[8.0, 0.0]).unwrap();
        // hand trace: 8 -> 7 -> 5 -> 1, three failures, then 0
        let values: Vec<f64> = r
            .outcome
            .trace
            .iter()
            .map(|t| t.best_value)
            .take(8)
            .collect();
        assert_eq!(values, vec![64.0, 49.0, 25.0, 1.0, 1.0, 1.0, 1.0, 0.0]);
        assert!(r.outcome.best_value < 1e-4);
    }

    #[test]
    fn config_validation() {
        let bad = PsConfig {
            expansion: 1.0,
            ..PsConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = PsConfig {
            contraction: 1.0,
            ..PsConfig::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn straight_initial_point() {
        let x0 = straight_line_x0(Point::new(0.5, 0.5), Point::new(9.5, 9.5), 4);
        assert_eq!(x0, vec![3.5, 3.5, 6.5, 6.5]);
        assert!(straight_line_x0(Point::new(0.0, 0.0), Point::new(1.0, 1.0), 2).is_empty());
    }
}
