// All three optimizers over several seeds, summarized as CSV.

use gridpath::bench::{compare, read_comparison_csv, CompareOptions};
use gridpath::presets;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec = presets::initial();
    let opts = CompareOptions {
        seeds: vec![1, 2, 3],
        ..CompareOptions::default()
    };
    let report = compare(&spec, &opts)?;
    let csv = report.to_csv()?;
    print!("{csv}");
    println!("{}", report.ordering.note);

    let (raw, aggregates) = read_comparison_csv(&csv)?;
    assert_eq!(raw.len(), 1 + 3 + 3);
    assert_eq!(aggregates.len(), 3);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
