// Draws the best path of each optimizer on the z-shaped world.
//
// `cargo run --example render_paths -- out.svg` writes the picture to
// `out.svg`; without an argument it goes to the system temp directory.

use gridpath::svg::render_svg;
use gridpath::{presets, solve, Algorithm};

fn render_to(out: &std::path::Path) -> Result<(), Box<dyn std::error::Error>> {
    let spec = presets::ztype();
    let mut paths = Vec::new();
    let mut labels = Vec::new();
    for algorithm in Algorithm::ALL {
        let r = solve(
            spec.env(),
            &spec.objective,
            &spec.algorithm_config(algorithm).with_seed(1),
            None,
        )?;
        labels.push(format!("{algorithm} {:.4}", r.best_value.total));
        paths.push(r.best_path);
    }
    let pairs: Vec<_> = paths
        .into_iter()
        .zip(labels.iter().map(String::as_str))
        .collect();
    let svg = render_svg(spec.env(), &pairs);

    std::fs::write(out, svg)?;
    println!("wrote {}", out.display());
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    render_to(&std::env::temp_dir().join("gridpath_ztype.svg"))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    match std::env::args().nth(1) {
        Some(out) => render_to(std::path::Path::new(&out)),
        None => run_example(),
    }
}
