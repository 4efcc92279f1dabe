//! Path cost: weighted length, smoothness and safety, plus a penalty for
//! paths that touch obstacles.
//!
//! For a path `P_1..P_n` the cost is
//!
//! ```text
//! total = alpha * sum d(P_i, P_i+1) + beta * smoothness + gamma * f_semi + penalty_term
//! ```
//!
//! where `f_semi` is `safety_c` once for the whole path when any segment comes
//! closer than `safety_k` to an obstacle, and `penalty_term` is zero for
//! feasible paths.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    euclidean, heading, min_clearance, segment_intersects_rect, turn_angle, Segment,
};
use crate::grid::{GridEnvironment, Point};

/// Ordered waypoints, at least two, all finite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path(Vec<Point>);

impl Path {
    pub fn new(waypoints: Vec<Point>) -> Result<Self> {
        if waypoints.len() < 2 {
            return Err(Error::Dimension {
                expected: 2,
                actual: waypoints.len(),
            });
        }
        if let Some(p) = waypoints.iter().find(|p| !p.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "non-finite waypoint ({}, {})",
                p.x, p.y
            )));
        }
        Ok(Self(waypoints))
    }

    /// Straight path from start to target with `n_points - 2` evenly spaced
    /// intermediate waypoints.
    pub fn straight(env: &GridEnvironment, n_points: usize) -> Result<Self> {
        let (s, t) = (env.start(), env.target());
        let segments = n_points.max(2) - 1;
        let pts = (0..=segments)
            .map(|i| {
                let f = i as f64 / segments as f64;
                if i == segments {
                    t
                } else {
                    Point::new(s.x + f * (t.x - s.x), s.y + f * (t.y - s.y))
                }
            })
            .collect();
        Self::new(pts)
    }

    pub fn waypoints(&self) -> &[Point] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Point {
        self.0[0]
    }

    pub fn last(&self) -> Point {
        self.0[self.0.len() - 1]
    }

    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        self.0.windows(2).map(|w| Segment::new(w[0], w[1]))
    }

    pub fn arc_length(&self) -> f64 {
        self.segments().map(|s| s.length()).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SmoothnessMode {
    /// Sum of absolute segment headings.
    #[default]
    Heading,
    /// Sum of absolute direction changes between consecutive segments.
    Turning,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PenaltyMode {
    /// One flat penalty for any infeasible path.
    #[default]
    Once,
    /// Penalty multiplied by the number of violations.
    PerViolation,
}

/// Weights and constants of the path cost.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ObjectiveConfig {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub safety_c: f64,
    pub safety_k: f64,
    pub penalty: f64,
    pub n_points: usize,
    pub smoothness_mode: SmoothnessMode,
    pub penalty_mode: PenaltyMode,
}

impl Default for ObjectiveConfig {
    fn default() -> Self {
        Self {
            alpha: 1.0,
            beta: 1.0,
            gamma: 5.0,
            safety_c: 2.0,
            safety_k: 0.3,
            penalty: 1000.0,
            n_points: 5,
            smoothness_mode: SmoothnessMode::Heading,
            penalty_mode: PenaltyMode::Once,
        }
    }
}

impl ObjectiveConfig {
    /// Pure path length: `beta = gamma = 0`.
    pub fn distance_only() -> Self {
        Self {
            beta: 0.0,
            gamma: 0.0,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let weights = [
            self.alpha,
            self.beta,
            self.gamma,
            self.safety_c,
            self.safety_k,
        ];
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidConfig(
                "alpha, beta, gamma, safety_c and safety_k must be finite and non-negative".into(),
            ));
        }
        if !(self.penalty.is_finite() && self.penalty > 0.0) {
            return Err(Error::InvalidConfig("penalty must be positive".into()));
        }
        if self.n_points < 2 {
            return Err(Error::InvalidConfig("n_points must be at least 2".into()));
        }
        Ok(())
    }
}

/// Cost breakdown. The term fields hold the unweighted sums, so
/// `total == alpha * distance_term + beta * smoothness_term
///          + gamma * safety_term + penalty_term`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveValue {
    pub total: f64,
    pub distance_term: f64,
    pub smoothness_term: f64,
    pub safety_term: f64,
    pub penalty_term: f64,
    pub feasible: bool,
    pub violation_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Feasibility {
    Feasible,
    Infeasible { violation_count: usize },
}

impl Feasibility {
    pub fn violation_count(&self) -> usize {
        match *self {
            Feasibility::Feasible => 0,
            Feasibility::Infeasible { violation_count } => violation_count,
        }
    }
}

/// Counts waypoints inside obstacles plus segments touching any obstacle.
pub fn classify(path: &Path, env: &GridEnvironment) -> Feasibility {
    let on_obstacle = path
        .waypoints()
        .iter()
        .filter(|&&p| env.is_point_occupied(p))
        .count();
    let crossing = path
        .segments()
        .filter(|s| env.obstacle_rects().any(|r| segment_intersects_rect(s, &r)))
        .count();
    match on_obstacle + crossing {
        0 => Feasibility::Feasible,
        violation_count => Feasibility::Infeasible { violation_count },
    }
}

/// `c` once if any segment's clearance is strictly below `k`, else 0.
pub fn safety_term(path: &Path, env: &GridEnvironment, c: f64, k: f64) -> f64 {
    if path.segments().any(|s| min_clearance(&s, env) < k) {
        c
    } else {
        0.0
    }
}

/// Smoothness sum; zero-length segments are skipped.
pub fn smoothness(path: &Path, mode: SmoothnessMode) -> f64 {
    let headings = path
        .waypoints()
        .windows(2)
        .filter_map(|w| heading(w[0], w[1]).ok());
    match mode {
        SmoothnessMode::Heading => headings.map(f64::abs).sum(),
        SmoothnessMode::Turning => {
            let hs: Vec<f64> = headings.collect();
            hs.windows(2).map(|w| turn_angle(w[0], w[1]).abs()).sum()
        }
    }
}

pub fn evaluate(path: &Path, env: &GridEnvironment, cfg: &ObjectiveConfig) -> ObjectiveValue {
    let distance_term: f64 = path
        .waypoints()
        .windows(2)
        .map(|w| euclidean(w[0], w[1]))
        .sum();
    let smoothness_term = smoothness(path, cfg.smoothness_mode);
    let safety = safety_term(path, env, cfg.safety_c, cfg.safety_k);
    let violation_count = classify(path, env).violation_count();
    let penalty_term = match (violation_count, cfg.penalty_mode) {
        (0, _) => 0.0,
        (_, PenaltyMode::Once) => cfg.penalty,
        (n, PenaltyMode::PerViolation) => cfg.penalty * n as f64,
    };
    let total =
        cfg.alpha * distance_term + cfg.beta * smoothness_term + cfg.gamma * safety + penalty_term;
    ObjectiveValue {
        total,
        distance_term,
        smoothness_term,
        safety_term: safety,
        penalty_term,
        feasible: violation_count == 0,
        violation_count,
    }
}
