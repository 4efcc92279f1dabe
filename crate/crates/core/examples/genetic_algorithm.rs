// Genetic algorithm: chromosome encoding, operators and a seeded run.

use gridpath::encoding::{decode_bits, encode_bits, Bitstring};
use gridpath::ga::crossover_at;
use gridpath::{presets, solve, Algorithm};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // ten bits per coordinate over [0, 10]
    let bits: Bitstring = "1000000000".parse()?;
    println!(
        "{bits} decodes to {:?}",
        decode_bits(&bits, 10, 0.0, 10.0)?.0
    );
    let enc = encode_bits(&[2.5, 7.5], 10, 0.0, 10.0)?;
    println!("(2.5, 7.5) encodes to {enc}");

    let a: Bitstring = "11111111".parse()?;
    let b: Bitstring = "00000000".parse()?;
    let (c, d) = crossover_at(&a, &b, 3)?;
    println!("crossover at 3: {c} {d}");

    let spec = presets::ztype();
    for seed in 1..=3 {
        let cfg = spec.algorithm_config(Algorithm::Ga).with_seed(seed);
        let r = solve(spec.env(), &spec.objective, &cfg, None)?;
        println!(
            "z-type, seed {seed}: {:.4} feasible {} ({} evaluations)",
            r.best_value.total, r.best_value.feasible, r.evaluations_used
        );
        // same seed, same answer
        let again = solve(spec.env(), &spec.objective, &cfg, None)?;
        assert_eq!(again.best_path, r.best_path);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
