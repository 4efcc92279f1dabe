// Particle swarm: a deterministic single step, then full seeded runs.

use gridpath::encoding::Bounds;
use gridpath::optimizer::{Objective, Sphere};
use gridpath::pso::{self, PsoConfig, Swarm};
use gridpath::{presets, solve, Algorithm};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let sphere = Sphere::new(2, -10.0, 10.0)?;
    let cfg = PsoConfig {
        swarm_size: 5,
        stochastic: false,
        seed: 7,
        ..PsoConfig::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let swarm = Swarm::init(&cfg, &sphere, None, &mut rng)?;
    let next = pso::step(&swarm, &cfg, &sphere, &mut rng)?;
    println!("gbest {:.4} -> {:.4}", swarm.gbest_value, next.gbest_value);
    assert!(next.gbest_value <= swarm.gbest_value);
    let b: &Bounds = sphere.bounds();
    assert!(next.particles.iter().all(|p| b.contains(&p.position)));

    let spec = presets::initial();
    for seed in 1..=3 {
        let cfg = spec.algorithm_config(Algorithm::Pso).with_seed(seed);
        let r = solve(spec.env(), &spec.objective, &cfg, None)?;
        println!(
            "initial world, seed {seed}: {:.4} feasible {}",
            r.best_value.total, r.best_value.feasible
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
