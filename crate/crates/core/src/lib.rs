//! Waypoint path planning on grid worlds with movable obstacles.
//!
//! A path is a fixed number of waypoints between a start and a target point.
//! Its cost combines length, smoothness and obstacle clearance, with a large
//! penalty when a waypoint or segment touches an obstacle cell. Three
//! derivative-free optimizers search over the intermediate waypoints:
//!
//! - [`ps`]: pattern search over a coordinate mesh,
//! - [`ga`]: binary-coded genetic algorithm,
//! - [`pso`]: particle swarm optimization.
//!
//! [`replan`] moves a robot along the current plan and re-optimizes when
//! obstacles move, [`oracle`] enumerates grid-restricted paths for ground
//! truth and [`bench`] runs head-to-head comparisons with CSV/JSON/SVG output.

// `!(x > 0.0)` style checks are meant to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod encoding;
pub mod error;
pub mod ga;
pub mod geometry;
pub mod grid;
pub mod objective;
pub mod optimizer;
pub mod oracle;
pub mod ps;
pub mod pso;
pub mod replan;
pub mod scenario;
pub mod solver;
pub mod svg;

pub use error::{Error, Result};
pub use grid::{GridEnvironment, ObstacleEvent, Point, Rect, Scenario};
pub use objective::{evaluate, ObjectiveConfig, ObjectiveValue, Path, PenaltyMode, SmoothnessMode};
pub use scenario::{presets, ScenarioSpec};
pub use solver::{solve, Algorithm, AlgorithmConfig, RunResult};
