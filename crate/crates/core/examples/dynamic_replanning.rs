// A robot follows its plan while two obstacles move, and replans when
// they do.

use gridpath::replan::{run_scenario, run_two_solve, DEFAULT_SPEED};
use gridpath::{presets, Algorithm};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = presets::initial();
    for algorithm in Algorithm::ALL {
        let cfg = spec.algorithm_config(algorithm).with_seed(1);
        let trace = run_scenario(&spec.scenario, &cfg, &spec.objective, DEFAULT_SPEED)?;
        println!(
            "{algorithm}: {:?} after {} steps",
            trace.outcome,
            trace.steps.len()
        );
        for s in trace.steps.iter().filter(|s| s.replanned) {
            println!(
                "  t={:>2} at ({:.2}, {:.2}) planned {:.4} in {:.2} ms",
                s.time_step,
                s.robot_position.x,
                s.robot_position.y,
                s.plan_value.total,
                s.replan_wall_ms
            );
        }
    }

    // the static alternative: plan once before and once after the move
    let cfg = spec.algorithm_config(Algorithm::Ps);
    let (before, after) = run_two_solve(&spec.scenario, &cfg, &spec.objective)?;
    println!(
        "two solves: {:.4} before, {:.4} after the move",
        before.best_value.total, after.best_value.total
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
