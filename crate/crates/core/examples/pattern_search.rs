// Pattern search on a toy quadratic, step by step, then on a path problem.

use gridpath::encoding::Bounds;
use gridpath::optimizer::{Objective, PathProblem};
use gridpath::presets;
use gridpath::ps::{self, straight_line_x0, PsConfig};

struct Quadratic {
    bounds: Bounds,
}

impl Objective for Quadratic {
    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn value(&self, x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum()
    }
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let q = Quadratic {
        bounds: Bounds::uniform(1, -100.0, 100.0)?,
    };
    let cfg = PsConfig {
        max_iterations: 8,
        ..PsConfig::default()
    };
    let report = ps::run(&cfg, &q, &[8.0])?;
    println!("iter  success  mesh       value");
    for s in &report.steps {
        println!(
            "{:>4}  {:<7}  {:<9}  {}",
            s.iteration, s.success, s.mesh_after, s.current_value
        );
    }

    let spec = presets::initial();
    let problem = PathProblem::new(spec.env(), &spec.objective)?;
    let x0 = straight_line_x0(
        spec.env().start(),
        spec.env().target(),
        spec.objective.n_points,
    );
    let report = ps::run(&spec.ps, &problem, &x0)?;
    let best = problem.breakdown(&report.outcome.best_point)?;
    println!(
        "initial world: {:.4} after {} iterations ({:?}), feasible {}",
        best.total, report.outcome.iterations, report.outcome.termination, best.feasible
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
