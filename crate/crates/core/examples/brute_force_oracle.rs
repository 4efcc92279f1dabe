// Exhaustive search over cell centers, used as ground truth for the
// continuous optimizers.

use gridpath::oracle::{default_candidates, enumerate_best};
use gridpath::{presets, solve, Algorithm};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = presets::small();
    let env = spec.env();
    let oracle = enumerate_best(env, &spec.objective, &default_candidates(env))?;
    let via = oracle.best_path.waypoints()[1];
    println!(
        "oracle: {:.6} via ({}, {}) after {} tuples",
        oracle.best_value, via.x, via.y, oracle.candidates_evaluated
    );
    for algorithm in Algorithm::ALL {
        let r = solve(
            env,
            &spec.objective,
            &spec.algorithm_config(algorithm).with_seed(1),
            None,
        )?;
        let gap = r.best_value.total - oracle.best_value;
        println!(
            "{algorithm:<4} {:.6} ({gap:+.6} against the oracle)",
            r.best_value.total
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
