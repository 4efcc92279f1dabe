//! Particle swarm optimization with personal and global bests.
//!
//! Velocity update per component:
//!
//! ```text
//! v <- w1 * v + c1 * r1 * (pbest - x) + c2 * r2 * (gbest - x)
//! x <- x + v
//! ```
//!
//! `r1`, `r2` are fresh uniform `[0, 1)` draws when `stochastic` is set and
//! fixed at 1 otherwise. Velocities are clamped to `[-v_max, v_max]` and
//! positions to the bounds. Updates are synchronous: every particle moves
//! against the previous step's gbest before any best is updated.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimizer::{checked_value, Objective, Outcome, Termination, TracePoint};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PsoConfig {
    pub swarm_size: usize,
    pub max_iterations: usize,
    pub w1: f64,
    pub c1: f64,
    pub c2: f64,
    pub v_max: f64,
    pub stochastic: bool,
    pub seed: u64,
}

impl Default for PsoConfig {
    fn default() -> Self {
        Self {
            swarm_size: 40,
            max_iterations: 300,
            w1: 0.7,
            c1: 1.5,
            c2: 1.5,
            v_max: 2.0,
            stochastic: true,
            seed: 0,
        }
    }
}

impl PsoConfig {
    pub fn validate(&self) -> Result<()> {
        if self.swarm_size == 0 {
            return Err(Error::InvalidConfig("swarm_size must be at least 1".into()));
        }
        if [self.w1, self.c1, self.c2]
            .iter()
            .any(|w| !(*w >= 0.0) || !w.is_finite())
        {
            return Err(Error::InvalidConfig(
                "w1, c1 and c2 must be non-negative".into(),
            ));
        }
        if !(self.v_max > 0.0) {
            return Err(Error::InvalidConfig("v_max must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Particle {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub pbest_position: Vec<f64>,
    pub pbest_value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Swarm {
    pub particles: Vec<Particle>,
    pub gbest_position: Vec<f64>,
    pub gbest_value: f64,
    pub iteration: usize,
}

impl Swarm {
    /// Positions uniform over the bounds, velocities uniform in
    /// `[-v_max, v_max]`. A `seed_point` replaces the first particle's
    /// position.
    pub fn init<O: Objective + ?Sized, R: Rng>(
        cfg: &PsoConfig,
        objective: &O,
        seed_point: Option<&[f64]>,
        rng: &mut R,
    ) -> Result<Self> {
        let bounds = objective.bounds();
        let dim = objective.dim();
        let mut particles = Vec::with_capacity(cfg.swarm_size);
        for i in 0..cfg.swarm_size {
            let mut position: Vec<f64> = (0..dim)
                .map(|j| {
                    let (lo, hi) = (bounds.lower()[j], bounds.upper()[j]);
                    if hi > lo {
                        rng.gen_range(lo..=hi)
                    } else {
                        lo
                    }
                })
                .collect();
            let velocity: Vec<f64> = (0..dim)
                .map(|_| rng.gen_range(-cfg.v_max..=cfg.v_max))
                .collect();
            if i == 0 {
                if let Some(p) = seed_point {
                    if p.len() != dim {
                        return Err(Error::Dimension {
                            expected: dim,
                            actual: p.len(),
                        });
                    }
                    position = p.to_vec();
                    bounds.clamp_all(&mut position);
                }
            }
            let value = checked_value(objective, &position, 0)?;
            particles.push(Particle {
                pbest_position: position.clone(),
                position,
                velocity,
                pbest_value: value,
            });
        }
        let (gbest_position, gbest_value) = best_of(&particles);
        Ok(Self {
            particles,
            gbest_position,
            gbest_value,
            iteration: 0,
        })
    }
}

/// Earliest particle with the minimum pbest.
fn best_of(particles: &[Particle]) -> (Vec<f64>, f64) {
    let mut best = 0;
    for (i, p) in particles.iter().enumerate() {
        if p.pbest_value < particles[best].pbest_value {
            best = i;
        }
    }
    (
        particles[best].pbest_position.clone(),
        particles[best].pbest_value,
    )
}

pub fn step<O: Objective + ?Sized, R: Rng>(
    swarm: &Swarm,
    cfg: &PsoConfig,
    objective: &O,
    rng: &mut R,
) -> Result<Swarm> {
    let bounds = objective.bounds();
    let iteration = swarm.iteration + 1;
    let mut particles = swarm.particles.clone();
    for p in &mut particles {
        for j in 0..p.position.len() {
            let (r1, r2) = if cfg.stochastic {
                (rng.gen::<f64>(), rng.gen::<f64>())
            } else {
                (1.0, 1.0)
            };
            let x = p.position[j];
            let v = cfg.w1 * p.velocity[j]
                + cfg.c1 * r1 * (p.pbest_position[j] - x)
                + cfg.c2 * r2 * (swarm.gbest_position[j] - x);
            let v = v.clamp(-cfg.v_max, cfg.v_max);
            p.velocity[j] = v;
            p.position[j] = bounds.clamp(j, x + v);
        }
    }
    for p in &mut particles {
        let value = checked_value(objective, &p.position, iteration)?;
        if value < p.pbest_value {
            p.pbest_value = value;
            p.pbest_position = p.position.clone();
        }
    }
    let mut gbest_position = swarm.gbest_position.clone();
    let mut gbest_value = swarm.gbest_value;
    for p in &particles {
        if p.pbest_value < gbest_value {
            gbest_value = p.pbest_value;
            gbest_position = p.pbest_position.clone();
        }
    }
    Ok(Swarm {
        particles,
        gbest_position,
        gbest_value,
        iteration,
    })
}

pub fn run<O: Objective + ?Sized>(
    cfg: &PsoConfig,
    objective: &O,
    seed_point: Option<&[f64]>,
) -> Result<Outcome> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut swarm = Swarm::init(cfg, objective, seed_point, &mut rng)?;
    let mut trace = vec![TracePoint {
        iteration: 0,
        best_value: swarm.gbest_value,
    }];
    for _ in 0..cfg.max_iterations {
        swarm = step(&swarm, cfg, objective, &mut rng)?;
        trace.push(TracePoint {
            iteration: swarm.iteration,
            best_value: swarm.gbest_value,
        });
    }
    Ok(Outcome {
        best_point: swarm.gbest_position,
        best_value: swarm.gbest_value,
        iterations: cfg.max_iterations,
        evaluations: cfg.swarm_size * (cfg.max_iterations + 1),
        trace,
        termination: Termination::MaxIterations,
    })
}
