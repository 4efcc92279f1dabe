//! Dynamic replanning: a point robot follows the current plan and the plan
//! is re-optimized from the robot's position whenever obstacles move.
//!
//! Each time step advances the robot `speed` world units along the active
//! plan. When an obstacle event fires at that step, it is applied and a new
//! plan with the same number of waypoints is optimized from the robot's
//! position, warm-started from what is left of the old plan. Every event
//! triggers a replan, even if the old plan is still feasible.

use std::io::Write;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::encoding::path_to_vector;
use crate::error::{Error, Result};
use crate::geometry::{euclidean, Segment};
use crate::grid::{GridEnvironment, Point, Scenario};
use crate::objective::{evaluate, ObjectiveConfig, ObjectiveValue, Path};
use crate::solver::{solve, AlgorithmConfig, RunResult};

/// Robot speed used when none is given, in world units per time step.
pub const DEFAULT_SPEED: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplanStep {
    pub time_step: usize,
    pub robot_position: Point,
    pub env_snapshot_id: usize,
    pub plan: Path,
    pub plan_value: ObjectiveValue,
    pub replanned: bool,
    /// Set on the last step when the optimizer found no feasible plan.
    pub planning_failed: bool,
    pub replan_wall_ms: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReplanOutcome {
    ReachedTarget,
    HorizonExpired,
    PlanningFailed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReplanTrace {
    pub steps: Vec<ReplanStep>,
    /// Environment snapshots indexed by `env_snapshot_id`.
    pub snapshots: Vec<GridEnvironment>,
    pub outcome: ReplanOutcome,
}

impl ReplanTrace {
    /// One JSON object per step.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> Result<()> {
        for step in &self.steps {
            serde_json::to_writer(&mut out, step)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn to_jsonl(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf)?;
        Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
    }

    pub fn replan_count(&self) -> usize {
        self.steps.iter().filter(|s| s.replanned).count()
    }
}

/// Point at arc length `min(from_arc + distance, total)` along `path`, and
/// that arc length.
pub fn advance_along(path: &Path, from_arc: f64, distance: f64) -> (Point, f64) {
    let total = path.arc_length();
    let goal = (from_arc + distance).clamp(0.0, total);
    if goal >= total {
        // exact target, not an interpolated approximation of it
        return (path.last(), total);
    }
    let mut walked = 0.0;
    for seg in path.segments() {
        let len = seg.length();
        if len > 0.0 && walked + len >= goal {
            let t = ((goal - walked) / len).clamp(0.0, 1.0);
            return (seg.lerp(t), goal);
        }
        walked += len;
    }
    (path.last(), goal)
}

/// Intermediate waypoints for a plan starting at `robot`: the old plan's
/// waypoints that lie ahead of `arc`, topped up by splitting the longest
/// remaining segment until there are `n_points - 2` of them.
pub fn warm_start(plan: &Path, arc: f64, robot: Point, n_points: usize) -> Vec<f64> {
    let wanted = n_points.saturating_sub(2);
    let pts = plan.waypoints();
    let mut ahead = Vec::new();
    let mut walked = 0.0;
    for w in pts.windows(2).take(pts.len() - 2) {
        walked += euclidean(w[0], w[1]);
        if walked > arc {
            ahead.push(w[1]);
        }
    }
    let target = plan.last();
    let mut poly = Vec::with_capacity(wanted + 2);
    poly.push(robot);
    poly.extend(ahead.into_iter().take(wanted));
    poly.push(target);
    while poly.len() < wanted + 2 {
        let (split, _) = poly
            .windows(2)
            .enumerate()
            .map(|(i, w)| (i, euclidean(w[0], w[1])))
            .fold((0, f64::NEG_INFINITY), |best, cur| {
                if cur.1 > best.1 {
                    cur
                } else {
                    best
                }
            });
        let mid = Segment::new(poly[split], poly[split + 1]).lerp(0.5);
        poly.insert(split + 1, mid);
    }
    let path = Path::new(poly).expect("finite waypoints");
    path_to_vector(&path).0
}

fn step_record(
    time_step: usize,
    robot_position: Point,
    env_snapshot_id: usize,
    plan: &Path,
    plan_value: ObjectiveValue,
    replanned: bool,
    wall: Duration,
) -> ReplanStep {
    ReplanStep {
        time_step,
        robot_position,
        env_snapshot_id,
        plan: plan.clone(),
        plan_value,
        replanned,
        planning_failed: false,
        replan_wall_ms: wall.as_secs_f64() * 1e3,
    }
}

fn failure(mut step: ReplanStep) -> ReplanStep {
    step.planning_failed = true;
    step
}

/// Plans at `t = 0`, then moves and replans until the robot reaches the
/// target, the horizon expires or no feasible plan can be found.
pub fn run_scenario(
    sc: &Scenario,
    algo: &AlgorithmConfig,
    obj_cfg: &ObjectiveConfig,
    speed: f64,
) -> Result<ReplanTrace> {
    if !(speed > 0.0 && speed.is_finite()) {
        return Err(Error::InvalidConfig("speed must be positive".into()));
    }
    let mut env = sc.initial_env().clone();
    let mut snapshots = vec![env.clone()];
    let mut steps = Vec::new();

    let first = solve(&env, obj_cfg, algo, None)?;
    let mut plan = first.best_path.clone();
    let record = step_record(
        0,
        env.start(),
        0,
        &plan,
        first.best_value.clone(),
        true,
        first.wall_time,
    );
    if !first.best_value.feasible {
        steps.push(failure(record));
        return Ok(ReplanTrace {
            steps,
            snapshots,
            outcome: ReplanOutcome::PlanningFailed,
        });
    }
    steps.push(record);

    let mut arc = 0.0;
    let mut events = sc.events().iter().peekable();
    let mut outcome = ReplanOutcome::HorizonExpired;
    let mut plan_env = env.clone();

    for t in 1..=sc.horizon() {
        let robot;
        (robot, arc) = advance_along(&plan, arc, speed);
        let mut replanned = false;
        let mut wall = Duration::ZERO;
        let mut value = None;

        if events.peek().is_some_and(|e| e.time_step == t) {
            let event = events.next().expect("peeked");
            env = env.apply_event(event)?;
            snapshots.push(env.clone());
            let snapshot = snapshots.len() - 1;
            let from_robot = match env.with_start(robot) {
                Ok(e) => e,
                Err(_) => {
                    // robot is inside a newly placed obstacle
                    let v = evaluate(&plan, &env, obj_cfg);
                    steps.push(failure(step_record(
                        t, robot, snapshot, &plan, v, true, wall,
                    )));
                    outcome = ReplanOutcome::PlanningFailed;
                    break;
                }
            };
            let seed = warm_start(&plan, arc, robot, obj_cfg.n_points);
            let result: RunResult = solve(&from_robot, obj_cfg, algo, Some(&seed))?;
            wall = result.wall_time;
            plan = result.best_path;
            plan_env = from_robot;
            arc = 0.0;
            replanned = true;
            if !result.best_value.feasible {
                steps.push(failure(step_record(
                    t,
                    robot,
                    snapshot,
                    &plan,
                    result.best_value,
                    true,
                    wall,
                )));
                outcome = ReplanOutcome::PlanningFailed;
                break;
            }
            value = Some(result.best_value);
        }

        let plan_value = value.unwrap_or_else(|| evaluate(&plan, &plan_env, obj_cfg));
        steps.push(step_record(
            t,
            robot,
            snapshots.len() - 1,
            &plan,
            plan_value,
            replanned,
            wall,
        ));
        if arc >= plan.arc_length() && !replanned {
            outcome = ReplanOutcome::ReachedTarget;
            break;
        }
    }

    Ok(ReplanTrace {
        steps,
        snapshots,
        outcome,
    })
}

/// The static alternative: one plan for the initial environment and one for
/// the environment after every event, both from the original start.
pub fn run_two_solve(
    sc: &Scenario,
    algo: &AlgorithmConfig,
    obj_cfg: &ObjectiveConfig,
) -> Result<(RunResult, RunResult)> {
    let before = solve(sc.initial_env(), obj_cfg, algo, None)?;
    let after = solve(&sc.final_env(), obj_cfg, algo, None)?;
    Ok((before, after))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::ObstacleEvent;
    use crate::objective::classify;
    use crate::ps::PsConfig;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn advance_cases() {
        let path = Path::new(vec![p(0.0, 0.0), p(3.0, 4.0)]).unwrap();
        assert_eq!(advance_along(&path, 0.0, 0.0), (p(0.0, 0.0), 0.0));
        assert_eq!(advance_along(&path, 0.0, 5.0), (p(3.0, 4.0), 5.0));
        assert_eq!(advance_along(&path, 0.0, 2.5), (p(1.5, 2.0), 2.5));
        assert_eq!(advance_along(&path, 4.0, 3.0), (p(3.0, 4.0), 5.0));

        let bent = Path::new(vec![p(0.0, 0.0), p(1.0, 0.0), p(1.0, 0.0), p(1.0, 2.0)]).unwrap();
        assert_eq!(advance_along(&bent, 0.5, 1.0), (p(1.0, 0.5), 1.5));
    }

    #[test]
    fn warm_start_keeps_remaining_geometry() {
        let plan = Path::new(vec![p(0.0, 0.0), p(4.0, 0.0), p(4.0, 4.0), p(8.0, 4.0)]).unwrap();
        // robot past the first corner
        let v = warm_start(&plan, 5.0, p(4.0, 1.0), 4);
        assert_eq!(v.len(), 4);
        // remaining corner (4,4) is kept; the longest leg (4,4)-(8,4) is split
        assert_eq!(v, vec![4.0, 4.0, 6.0, 4.0]);

        let before = warm_start(&plan, 1.0, p(1.0, 0.0), 4);
        assert_eq!(before, vec![4.0, 0.0, 4.0, 4.0]);
    }

    #[test]
    fn no_events_plans_once() {
        let env = GridEnvironment::new(10, 10, [44, 45, 46], p(0.5, 0.5), p(9.5, 9.5)).unwrap();
        let sc = Scenario::new(env, vec![], 80).unwrap();
        let cfg = ObjectiveConfig {
            penalty_mode: crate::objective::PenaltyMode::PerViolation,
            ..ObjectiveConfig::default()
        };
        let trace =
            run_scenario(&sc, &AlgorithmConfig::Ps(PsConfig::default()), &cfg, 0.5).unwrap();
        assert_eq!(trace.outcome, ReplanOutcome::ReachedTarget);
        assert!(trace.steps[0].replanned);
        assert!(trace.steps[1..].iter().all(|s| !s.replanned));
        assert_eq!(trace.replan_count(), 1);
        assert_eq!(trace.steps.last().unwrap().robot_position, p(9.5, 9.5));
        for w in trace.steps.windows(2) {
            assert!(euclidean(w[0].robot_position, w[1].robot_position) <= 0.5 + 1e-12);
        }
    }

    #[test]
    fn event_replans_even_when_plan_survives() {
        let env = GridEnvironment::new(10, 10, [44, 45, 46, 91], p(0.5, 0.5), p(9.5, 9.5)).unwrap();
        let sc = Scenario::new(env, vec![ObstacleEvent::new(3, vec![91], vec![92])], 80).unwrap();
        let cfg = ObjectiveConfig {
            penalty_mode: crate::objective::PenaltyMode::PerViolation,
            ..ObjectiveConfig::default()
        };
        let trace =
            run_scenario(&sc, &AlgorithmConfig::Ps(PsConfig::default()), &cfg, 0.5).unwrap();
        let at_event = &trace.steps[3];
        assert!(at_event.replanned);
        assert_eq!(at_event.env_snapshot_id, 1);
        assert_eq!(at_event.plan.first(), at_event.robot_position);
        assert!(
            classify(&at_event.plan, &trace.snapshots[1])
                == crate::objective::Feasibility::Feasible
        );
    }

    #[test]
    fn robot_inside_new_obstacle_fails() {
        // straight world: the robot sits in cell 2 when it becomes blocked
        let env = GridEnvironment::new(10, 1, [], p(0.5, 0.5), p(9.5, 0.5)).unwrap();
        let sc = Scenario::new(env, vec![ObstacleEvent::new(2, vec![], vec![2])], 30).unwrap();
        let cfg = ObjectiveConfig {
            n_points: 2,
            ..ObjectiveConfig::distance_only()
        };
        let trace =
            run_scenario(&sc, &AlgorithmConfig::Ps(PsConfig::default()), &cfg, 0.5).unwrap();
        assert_eq!(trace.outcome, ReplanOutcome::PlanningFailed);
        assert!(trace.steps.last().unwrap().planning_failed);
    }

    #[test]
    fn jsonl_has_one_line_per_step() {
        let env = GridEnvironment::open_10x10();
        let sc = Scenario::new(env, vec![], 5).unwrap();
        let trace = run_scenario(
            &sc,
            &AlgorithmConfig::Ps(PsConfig::default()),
            &ObjectiveConfig::default(),
            0.5,
        )
        .unwrap();
        assert_eq!(trace.outcome, ReplanOutcome::HorizonExpired);
        let text = trace.to_jsonl().unwrap();
        assert_eq!(text.lines().count(), trace.steps.len());
        let back: ReplanStep = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        assert_eq!(back, trace.steps[0]);
    }
}
