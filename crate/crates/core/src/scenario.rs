//! Scenario files and the bundled example worlds.
//!
//! A scenario file is a JSON object:
//!
//! ```json
//! {
//!   "width": 10, "height": 10,
//!   "start": [0.5, 0.5], "target": [9.5, 9.5],
//!   "obstacles": [44, 45, 46, 62, 72],
//!   "events": [{"t": 6, "remove": [62, 72], "add": [58, 68]}],
//!   "horizon": 60,
//!   "objective": {"alpha": 1.0, "beta": 1.0, "gamma": 5.0},
//!   "ps": {"max_iterations": 500},
//!   "ga": {"seed": 1},
//!   "pso": {"swarm_size": 40}
//! }
//! ```
//!
//! The optimizer sections are optional and fall back to defaults. Unknown
//! fields anywhere are rejected.

use std::fs;
use std::path::Path as FsPath;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ga::GaConfig;
use crate::grid::{GridEnvironment, ObstacleEvent, Point, Scenario};
use crate::objective::ObjectiveConfig;
use crate::ps::PsConfig;
use crate::pso::PsoConfig;
use crate::solver::{Algorithm, AlgorithmConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub width: usize,
    pub height: usize,
    pub start: Point,
    pub target: Point,
    #[serde(default)]
    pub obstacles: Vec<usize>,
    #[serde(default)]
    pub events: Vec<ObstacleEvent>,
    #[serde(default)]
    pub horizon: usize,
    #[serde(default)]
    pub objective: ObjectiveConfig,
    #[serde(default)]
    pub ps: PsConfig,
    #[serde(default)]
    pub ga: GaConfig,
    #[serde(default)]
    pub pso: PsoConfig,
}

/// A parsed and validated scenario file.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSpec {
    pub name: String,
    pub scenario: Scenario,
    pub objective: ObjectiveConfig,
    pub ps: PsConfig,
    pub ga: GaConfig,
    pub pso: PsoConfig,
}

impl ScenarioSpec {
    pub fn from_json(name: &str, text: &str) -> Result<Self> {
        let file: ScenarioFile = serde_json::from_str(text)?;
        Self::from_file(name, file)
    }

    pub fn load(path: impl AsRef<FsPath>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path)?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "scenario".to_string());
        Self::from_json(&name, &text)
    }

    pub fn from_file(name: &str, file: ScenarioFile) -> Result<Self> {
        let env = GridEnvironment::new(
            file.width,
            file.height,
            file.obstacles,
            file.start,
            file.target,
        )?;
        let scenario = Scenario::new(env, file.events, file.horizon)?;
        file.objective.validate()?;
        file.ps.validate()?;
        file.ga.validate()?;
        file.pso.validate()?;
        Ok(Self {
            name: name.to_string(),
            scenario,
            objective: file.objective,
            ps: file.ps,
            ga: file.ga,
            pso: file.pso,
        })
    }

    pub fn to_file(&self) -> ScenarioFile {
        let env = self.scenario.initial_env();
        ScenarioFile {
            width: env.width(),
            height: env.height(),
            start: env.start(),
            target: env.target(),
            obstacles: env.obstacles().iter().copied().collect(),
            events: self.scenario.events().to_vec(),
            horizon: self.scenario.horizon(),
            objective: self.objective.clone(),
            ps: self.ps.clone(),
            ga: self.ga.clone(),
            pso: self.pso.clone(),
        }
    }

    pub fn env(&self) -> &GridEnvironment {
        self.scenario.initial_env()
    }

    /// The scenario's settings for one optimizer.
    pub fn algorithm_config(&self, algorithm: Algorithm) -> AlgorithmConfig {
        match algorithm {
            Algorithm::Ps => AlgorithmConfig::Ps(self.ps.clone()),
            Algorithm::Ga => AlgorithmConfig::Ga(self.ga.clone()),
            Algorithm::Pso => AlgorithmConfig::Pso(self.pso.clone()),
        }
    }
}

/// The bundled scenario files.
pub mod presets {
    use super::*;

    pub const INITIAL: &str = include_str!("../scenarios/initial.json");
    pub const ZTYPE: &str = include_str!("../scenarios/ztype.json");
    pub const OPEN: &str = include_str!("../scenarios/open.json");
    pub const SMALL: &str = include_str!("../scenarios/small.json");

    fn parse(name: &str, text: &str) -> ScenarioSpec {
        ScenarioSpec::from_json(name, text).expect("bundled scenario is valid")
    }

    /// 10x10 world with five obstacles; cells 62 and 72 move to 58 and 68
    /// during the run.
    pub fn initial() -> ScenarioSpec {
        parse("initial", INITIAL)
    }

    /// 10x10 world with two offset walls, one from each side, that the route
    /// has to thread between.
    pub fn ztype() -> ScenarioSpec {
        parse("ztype", ZTYPE)
    }

    /// Empty 10x10 world with a pure path-length objective.
    pub fn open() -> ScenarioSpec {
        parse("open", OPEN)
    }

    /// 5x5 world with one blocked cell next to the diagonal and one free waypoint.
    pub fn small() -> ScenarioSpec {
        parse("small", SMALL)
    }

    pub fn by_name(name: &str) -> Option<ScenarioSpec> {
        match name {
            "initial" => Some(initial()),
            "ztype" => Some(ztype()),
            "open" => Some(open()),
            "small" => Some(small()),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_parse() {
        let initial = presets::initial();
        assert_eq!(initial.env().obstacles().len(), 5);
        assert!(initial.env().obstacles().contains(&62));
        assert!(initial.env().obstacles().contains(&72));
        let moved = initial.scenario.final_env();
        assert!(moved.obstacles().contains(&58) && moved.obstacles().contains(&68));
        assert!(!moved.obstacles().contains(&62));

        assert_eq!(presets::small().env().width(), 5);
        assert_eq!(presets::small().objective.n_points, 3);
        assert!(presets::open().env().obstacles().is_empty());
        assert!(!presets::ztype().env().obstacles().is_empty());
    }

    #[test]
    fn unknown_fields_rejected() {
        let text =
            r#"{"width": 3, "height": 3, "start": [0.5, 0.5], "target": [2.5, 2.5], "colour": 1}"#;
        let err = ScenarioSpec::from_json("x", text).unwrap_err();
        assert!(err.to_string().contains("colour"), "{err}");

        let nested = r#"{"width": 3, "height": 3, "start": [0.5, 0.5], "target": [2.5, 2.5],
                         "objective": {"alfa": 1.0}}"#;
        assert!(ScenarioSpec::from_json("x", nested).is_err());
    }

    #[test]
    fn parse_errors_carry_position() {
        let text = "{\n  \"width\": 3,\n  \"height\": \"three\"\n}";
        let err = ScenarioSpec::from_json("x", text).unwrap_err().to_string();
        assert!(err.contains("line 3"), "{err}");
    }

    #[test]
    fn file_round_trip() {
        let spec = presets::initial();
        let json = serde_json::to_string(&spec.to_file()).unwrap();
        assert_eq!(ScenarioSpec::from_json("initial", &json).unwrap(), spec);
    }

    #[test]
    fn minimal_file_uses_defaults() {
        let text = r#"{"width": 4, "height": 4, "start": [0.5, 0.5], "target": [3.5, 3.5],
                       "obstacles": [6], "events": [{"t": 2, "remove": [6], "add": [7]}], "horizon": 5}"#;
        let spec = ScenarioSpec::from_json("mini", text).unwrap();
        assert_eq!(spec.objective, ObjectiveConfig::default());
        assert_eq!(spec.scenario.events().len(), 1);
        assert_eq!(spec.ga, GaConfig::default());
    }
}
