// Scores a few candidate paths and prints every objective term.

use gridpath::{
    evaluate, GridEnvironment, ObjectiveConfig, Path, PenaltyMode, Point, SmoothnessMode,
};

fn show(label: &str, path: &Path, env: &GridEnvironment, cfg: &ObjectiveConfig) {
    let v = evaluate(path, env, cfg);
    println!(
        "{label:<22} total {:>9.4}  dist {:.4}  smooth {:.4}  safety {}  penalty {}  feasible {}",
        v.total, v.distance_term, v.smoothness_term, v.safety_term, v.penalty_term, v.feasible
    );
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // worked example: two diagonal legs, safety off
    let open = GridEnvironment::new(3, 2, [], Point::new(0.0, 0.0), Point::new(2.0, 0.0))?;
    let tent = Path::new(vec![
        Point::new(0.0, 0.0),
        Point::new(1.0, 1.0),
        Point::new(2.0, 0.0),
    ])?;
    let cfg = ObjectiveConfig {
        gamma: 0.0,
        n_points: 3,
        ..ObjectiveConfig::default()
    };
    let v = evaluate(&tent, &open, &cfg);
    let expected = 2.0 * 2f64.sqrt() + std::f64::consts::FRAC_PI_2;
    println!("tent path: {} (2*sqrt(2) + pi/2 = {expected})", v.total);
    assert!((v.total - expected).abs() < 1e-12);

    let env = GridEnvironment::new(
        10,
        10,
        [44, 45, 46, 62, 72],
        Point::new(0.5, 0.5),
        Point::new(9.5, 9.5),
    )?;
    let straight = Path::straight(&env, 5)?;
    let detour = Path::new(vec![
        env.start(),
        Point::new(3.5, 2.5),
        Point::new(7.5, 3.5),
        Point::new(8.5, 6.5),
        env.target(),
    ])?;
    for (label, cfg) in [
        ("once, heading", ObjectiveConfig::default()),
        (
            "per violation",
            ObjectiveConfig {
                penalty_mode: PenaltyMode::PerViolation,
                ..ObjectiveConfig::default()
            },
        ),
        (
            "turning smoothness",
            ObjectiveConfig {
                smoothness_mode: SmoothnessMode::Turning,
                ..ObjectiveConfig::default()
            },
        ),
    ] {
        println!("-- {label}");
        show("straight (blocked)", &straight, &env, &cfg);
        show("detour", &detour, &env, &cfg);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
