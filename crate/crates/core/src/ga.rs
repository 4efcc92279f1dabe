//! Binary-coded genetic algorithm.
//!
//! Chromosomes are fixed-length bitstrings, `bits_per_coord` bits per
//! decision coordinate, decoded linearly into the objective's bounds. Each
//! generation keeps the `elitism` best members and fills the rest with
//! tournament selection, single-point crossover and bit-flip mutation. All
//! draws come from one `ChaCha8Rng` seeded with `seed`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::encoding::{decode_bits_in, encode_bits_in, Bitstring};
use crate::error::{Error, Result};
use crate::optimizer::{checked_value, Objective, Outcome, Termination, TracePoint};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaConfig {
    pub population_size: usize,
    pub max_generations: usize,
    pub crossover_rate: f64,
    /// Per-bit flip probability.
    pub mutation_rate: f64,
    pub tournament_size: usize,
    pub elitism: usize,
    pub bits_per_coord: usize,
    pub seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population_size: 60,
            max_generations: 200,
            crossover_rate: 0.8,
            mutation_rate: 0.01,
            tournament_size: 2,
            elitism: 1,
            bits_per_coord: 10,
            seed: 0,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < 2 {
            return Err(Error::InvalidConfig(
                "population_size must be at least 2".into(),
            ));
        }
        for (name, rate) in [
            ("crossover_rate", self.crossover_rate),
            ("mutation_rate", self.mutation_rate),
        ] {
            if !(0.0..=1.0).contains(&rate) {
                return Err(Error::InvalidConfig(format!("{name} must lie in [0, 1]")));
            }
        }
        if self.elitism >= self.population_size {
            return Err(Error::InvalidConfig(
                "elitism must be below population_size".into(),
            ));
        }
        if self.tournament_size == 0 {
            return Err(Error::InvalidConfig(
                "tournament_size must be at least 1".into(),
            ));
        }
        if self.bits_per_coord == 0 || self.bits_per_coord > 52 {
            return Err(Error::InvalidConfig(
                "bits_per_coord must be in 1..=52".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Member {
    pub chromosome: Bitstring,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaPopulation {
    pub members: Vec<Member>,
    pub generation: usize,
}

impl GaPopulation {
    /// Index of the lowest value; the earliest member wins ties.
    pub fn best_index(&self) -> usize {
        let mut best = 0;
        for (i, m) in self.members.iter().enumerate() {
            if m.value < self.members[best].value {
                best = i;
            }
        }
        best
    }

    pub fn best(&self) -> &Member {
        &self.members[self.best_index()]
    }
}

/// Tournament of `size` members drawn uniformly with replacement; the lowest
/// value wins, the first drawn wins ties.
pub fn select<'p, R: Rng>(pop: &'p GaPopulation, size: usize, rng: &mut R) -> &'p Bitstring {
    let n = pop.members.len();
    let mut winner = rng.gen_range(0..n);
    for _ in 1..size {
        let challenger = rng.gen_range(0..n);
        if pop.members[challenger].value < pop.members[winner].value {
            winner = challenger;
        }
    }
    &pop.members[winner].chromosome
}

/// Tournament without replacement. With `size == population_size` this
/// always returns the best member.
pub fn select_without_replacement<'p, R: Rng>(
    pop: &'p GaPopulation,
    size: usize,
    rng: &mut R,
) -> &'p Bitstring {
    let n = pop.members.len();
    let picks = rand::seq::index::sample(rng, n, size.clamp(1, n));
    let winner = picks
        .iter()
        .reduce(|w, c| {
            if pop.members[c].value < pop.members[w].value {
                c
            } else {
                w
            }
        })
        .expect("at least one pick");
    &pop.members[winner].chromosome
}

/// Children `a[..cut] + b[cut..]` and `b[..cut] + a[cut..]`.
pub fn crossover_at(a: &Bitstring, b: &Bitstring, cut: usize) -> Result<(Bitstring, Bitstring)> {
    if a.len() != b.len() {
        return Err(Error::Dimension {
            expected: a.len(),
            actual: b.len(),
        });
    }
    let cut = cut.min(a.len());
    let mut c1 = a.0[..cut].to_vec();
    c1.extend_from_slice(&b.0[cut..]);
    let mut c2 = b.0[..cut].to_vec();
    c2.extend_from_slice(&a.0[cut..]);
    Ok((Bitstring(c1), Bitstring(c2)))
}

/// Single-point crossover applied with probability `rate`; otherwise the
/// parents are copied. The cut is uniform in `[1, len - 1]`.
pub fn crossover<R: Rng>(
    a: &Bitstring,
    b: &Bitstring,
    rate: f64,
    rng: &mut R,
) -> Result<(Bitstring, Bitstring)> {
    if a.len() != b.len() {
        return Err(Error::Dimension {
            expected: a.len(),
            actual: b.len(),
        });
    }
    if a.len() < 2 || rng.gen::<f64>() >= rate {
        return Ok((a.clone(), b.clone()));
    }
    let cut = rng.gen_range(1..a.len());
    crossover_at(a, b, cut)
}

/// Flips each bit independently with probability `rate`.
pub fn mutate<R: Rng>(s: &Bitstring, rate: f64, rng: &mut R) -> Bitstring {
    Bitstring(
        s.0.iter()
            .map(|&bit| if rng.gen::<f64>() < rate { !bit } else { bit })
            .collect(),
    )
}

fn score<O: Objective + ?Sized>(
    chromosome: &Bitstring,
    cfg: &GaConfig,
    objective: &O,
    generation: usize,
) -> Result<f64> {
    let x = decode_bits_in(chromosome, cfg.bits_per_coord, objective.bounds())?;
    checked_value(objective, &x, generation)
}

/// Uniform random bits; if `seed_point` is given it is encoded into the first
/// member.
pub fn init_population<O: Objective + ?Sized, R: Rng>(
    cfg: &GaConfig,
    objective: &O,
    seed_point: Option<&[f64]>,
    rng: &mut R,
) -> Result<GaPopulation> {
    let len = cfg.bits_per_coord * objective.dim();
    let mut chromosomes: Vec<Bitstring> = (0..cfg.population_size)
        .map(|_| Bitstring((0..len).map(|_| rng.gen::<bool>()).collect()))
        .collect();
    if let Some(p) = seed_point {
        let mut clamped = p.to_vec();
        if clamped.len() != objective.dim() {
            return Err(Error::Dimension {
                expected: objective.dim(),
                actual: clamped.len(),
            });
        }
        objective.bounds().clamp_all(&mut clamped);
        chromosomes[0] = encode_bits_in(&clamped, cfg.bits_per_coord, objective.bounds())?;
    }
    let members = chromosomes
        .into_iter()
        .map(|chromosome| {
            let value = score(&chromosome, cfg, objective, 0)?;
            Ok(Member { chromosome, value })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GaPopulation {
        members,
        generation: 0,
    })
}

/// Produces the next generation.
pub fn evolve<O: Objective + ?Sized, R: Rng>(
    pop: &GaPopulation,
    cfg: &GaConfig,
    objective: &O,
    rng: &mut R,
) -> Result<GaPopulation> {
    let generation = pop.generation + 1;
    let mut order: Vec<usize> = (0..pop.members.len()).collect();
    order.sort_by(|&a, &b| {
        pop.members[a]
            .value
            .total_cmp(&pop.members[b].value)
            .then(a.cmp(&b))
    });

    let n = cfg.population_size;
    let mut next: Vec<Member> = order
        .iter()
        .take(cfg.elitism)
        .map(|&i| pop.members[i].clone())
        .collect();
    while next.len() < n {
        let a = select(pop, cfg.tournament_size, rng);
        let b = select(pop, cfg.tournament_size, rng);
        let (c1, c2) = crossover(a, b, cfg.crossover_rate, rng)?;
        for child in [c1, c2] {
            if next.len() == n {
                break;
            }
            let chromosome = mutate(&child, cfg.mutation_rate, rng);
            let value = score(&chromosome, cfg, objective, generation)?;
            next.push(Member { chromosome, value });
        }
    }
    Ok(GaPopulation {
        members: next,
        generation,
    })
}

pub fn run<O: Objective + ?Sized>(
    cfg: &GaConfig,
    objective: &O,
    seed_point: Option<&[f64]>,
) -> Result<Outcome> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut pop = init_population(cfg, objective, seed_point, &mut rng)?;
    let mut evaluations = pop.members.len();
    let mut best = pop.best().clone();
    let mut trace = vec![TracePoint {
        iteration: 0,
        best_value: best.value,
    }];
    for _ in 0..cfg.max_generations {
        pop = evolve(&pop, cfg, objective, &mut rng)?;
        evaluations += cfg.population_size - cfg.elitism;
        let candidate = pop.best();
        if candidate.value < best.value {
            best = candidate.clone();
        }
        trace.push(TracePoint {
            iteration: pop.generation,
            best_value: best.value,
        });
    }
    let best_point = decode_bits_in(&best.chromosome, cfg.bits_per_coord, objective.bounds())?.0;
    Ok(Outcome {
        best_point,
        best_value: best.value,
        iterations: cfg.max_generations,
        evaluations,
        trace,
        termination: Termination::MaxIterations,
    })
}
