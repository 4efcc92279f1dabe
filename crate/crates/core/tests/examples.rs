// Every example doubles as a smoke test: its `run_example` must succeed.

#[allow(dead_code)]
mod grid_geometry {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/grid_geometry.rs"
    ));
}

#[allow(dead_code)]
mod objective_breakdown {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/objective_breakdown.rs"
    ));
}

#[allow(dead_code)]
mod pattern_search {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/pattern_search.rs"
    ));
}

#[allow(dead_code)]
mod genetic_algorithm {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/genetic_algorithm.rs"
    ));
}

#[allow(dead_code)]
mod particle_swarm {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/particle_swarm.rs"
    ));
}

#[allow(dead_code)]
mod dynamic_replanning {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/dynamic_replanning.rs"
    ));
}

#[allow(dead_code)]
mod brute_force_oracle {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/brute_force_oracle.rs"
    ));
}

#[allow(dead_code)]
mod compare_algorithms {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/compare_algorithms.rs"
    ));
}

#[allow(dead_code)]
mod render_paths {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/render_paths.rs"
    ));
}

#[test]
fn grid_geometry_example_runs() {
    grid_geometry::run_example().expect("grid_geometry example should run");
}

#[test]
fn objective_breakdown_example_runs() {
    objective_breakdown::run_example().expect("objective_breakdown example should run");
}

#[test]
fn pattern_search_example_runs() {
    pattern_search::run_example().expect("pattern_search example should run");
}

#[test]
fn genetic_algorithm_example_runs() {
    genetic_algorithm::run_example().expect("genetic_algorithm example should run");
}

#[test]
fn particle_swarm_example_runs() {
    particle_swarm::run_example().expect("particle_swarm example should run");
}

#[test]
fn dynamic_replanning_example_runs() {
    dynamic_replanning::run_example().expect("dynamic_replanning example should run");
}

#[test]
fn brute_force_oracle_example_runs() {
    brute_force_oracle::run_example().expect("brute_force_oracle example should run");
}

#[test]
fn compare_algorithms_example_runs() {
    compare_algorithms::run_example().expect("compare_algorithms example should run");
}

#[test]
fn render_paths_example_runs() {
    render_paths::run_example().expect("render_paths example should run");
}
