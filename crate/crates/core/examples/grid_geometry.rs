// Cell numbering, obstacle events and exact segment clearance.
//
// Run with `cargo run --example grid_geometry`.

use gridpath::geometry::{heading, min_clearance, segment_rect_distance, Segment};
use gridpath::{GridEnvironment, ObstacleEvent, Point, Rect};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let env = GridEnvironment::new(
        10,
        10,
        [44, 45, 46, 62, 72],
        Point::new(0.5, 0.5),
        Point::new(9.5, 9.5),
    )?;

    // cells count from 1 at the bottom-left, row by row
    for cell in [1, 10, 11, 62] {
        let r = env.cell_to_rect(cell)?;
        println!(
            "cell {cell:>3}: [{}, {}] x [{}, {}]",
            r.min.x, r.max.x, r.min.y, r.max.y
        );
    }
    assert_eq!(
        env.cell_to_rect(62)?,
        Rect::new(Point::new(1.0, 6.0), Point::new(2.0, 7.0))
    );

    let event = ObstacleEvent::new(6, vec![62, 72], vec![58, 68]);
    let moved = env.apply_event(&event)?;
    println!("after event: {:?}", moved.obstacles());
    // events are pure and invertible
    assert_eq!(moved.apply_event(&event.inverse())?, env);

    let seg = Segment::new(Point::new(0.0, 0.0), Point::new(1.0, 3.0));
    let block = Rect::new(Point::new(2.0, 2.0), Point::new(3.0, 3.0));
    let d = segment_rect_distance(&seg, &block);
    println!("segment to block distance: {d}");
    assert_eq!(d, 1.0);

    let diag = Segment::new(env.start(), env.target());
    println!("diagonal clearance: {}", min_clearance(&diag, &env));
    println!(
        "diagonal heading: {:.6} rad",
        heading(env.start(), env.target())?
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
