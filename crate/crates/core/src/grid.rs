//! Numbered grid world with unit-cell obstacles.
//!
//! Cells are numbered row-major starting at 1 in the bottom-left corner:
//! cell `c` covers `[col, col+1] x [row, row+1]` with
//! `col = (c-1) % width` and `row = (c-1) / width`. Obstacle cells are closed
//! rectangles, so a point on an obstacle edge is occupied.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point in world units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Self { x, y }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

/// Closed axis-aligned rectangle `[min.x, max.x] x [min.y, max.y]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub min: Point,
    pub max: Point,
}

impl Rect {
    pub const fn new(min: Point, max: Point) -> Self {
        Self { min, max }
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    pub fn center(&self) -> Point {
        Point::new(
            0.5 * (self.min.x + self.max.x),
            0.5 * (self.min.y + self.max.y),
        )
    }

    pub fn corners(&self) -> [Point; 4] {
        [
            self.min,
            Point::new(self.max.x, self.min.y),
            self.max,
            Point::new(self.min.x, self.max.y),
        ]
    }
}

/// A `width x height` world of unit cells with a set of occupied cells and
/// fixed start and target points.
#[derive(Debug, Clone, PartialEq)]
pub struct GridEnvironment {
    width: usize,
    height: usize,
    obstacles: BTreeSet<usize>,
    start: Point,
    target: Point,
}

impl GridEnvironment {
    pub fn new(
        width: usize,
        height: usize,
        obstacles: impl IntoIterator<Item = usize>,
        start: Point,
        target: Point,
    ) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidEnvironment(format!(
                "grid must have at least one cell, got {width}x{height}"
            )));
        }
        let mut set = BTreeSet::new();
        for cell in obstacles {
            if cell == 0 || cell > width * height {
                return Err(Error::CellOutOfRange {
                    cell,
                    max: width * height,
                });
            }
            if !set.insert(cell) {
                return Err(Error::InvalidEnvironment(format!(
                    "obstacle cell {cell} listed twice"
                )));
            }
        }
        let env = Self {
            width,
            height,
            obstacles: set,
            start,
            target,
        };
        env.check_endpoint("start", start)?;
        env.check_endpoint("target", target)?;
        Ok(env)
    }

    /// Empty 10x10 world from the center of cell 1 to the center of cell 100.
    pub fn open_10x10() -> Self {
        Self::new(10, 10, [], Point::new(0.5, 0.5), Point::new(9.5, 9.5))
            .expect("static environment is valid")
    }

    fn check_endpoint(&self, name: &str, p: Point) -> Result<()> {
        if !p.is_finite() || !self.bounds().contains(p) {
            return Err(Error::InvalidEnvironment(format!(
                "{name} ({}, {}) lies outside the world",
                p.x, p.y
            )));
        }
        if self.is_point_occupied(p) {
            return Err(Error::InvalidEnvironment(format!(
                "{name} ({}, {}) lies inside an obstacle",
                p.x, p.y
            )));
        }
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn cell_count(&self) -> usize {
        self.width * self.height
    }

    pub fn obstacles(&self) -> &BTreeSet<usize> {
        &self.obstacles
    }

    pub fn start(&self) -> Point {
        self.start
    }

    pub fn target(&self) -> Point {
        self.target
    }

    /// The whole world as a rectangle.
    pub fn bounds(&self) -> Rect {
        Rect::new(
            Point::new(0.0, 0.0),
            Point::new(self.width as f64, self.height as f64),
        )
    }

    pub fn diagonal(&self) -> f64 {
        (self.width as f64).hypot(self.height as f64)
    }

    /// Unit square covered by a 1-based cell index.
    pub fn cell_to_rect(&self, cell: usize) -> Result<Rect> {
        if cell == 0 || cell > self.cell_count() {
            return Err(Error::CellOutOfRange {
                cell,
                max: self.cell_count(),
            });
        }
        let col = ((cell - 1) % self.width) as f64;
        let row = ((cell - 1) / self.width) as f64;
        Ok(Rect::new(
            Point::new(col, row),
            Point::new(col + 1.0, row + 1.0),
        ))
    }

    pub fn cell_center(&self, cell: usize) -> Result<Point> {
        self.cell_to_rect(cell).map(|r| r.center())
    }

    /// Rectangles of all obstacle cells in ascending index order.
    pub fn obstacle_rects(&self) -> impl Iterator<Item = Rect> + '_ {
        self.obstacles.iter().map(|&c| {
            self.cell_to_rect(c)
                .expect("obstacle indices are validated")
        })
    }

    pub fn is_point_occupied(&self, p: Point) -> bool {
        self.obstacle_rects().any(|r| r.contains(p))
    }

    /// Centers of every cell that is not an obstacle, in index order.
    pub fn free_cell_centers(&self) -> Vec<Point> {
        (1..=self.cell_count())
            .filter(|c| !self.obstacles.contains(c))
            .map(|c| self.cell_center(c).expect("index in range"))
            .collect()
    }

    /// Returns a new environment with the event applied; `self` is untouched.
    pub fn apply_event(&self, event: &ObstacleEvent) -> Result<Self> {
        let mut obstacles = self.obstacles.clone();
        for &cell in &event.remove {
            if !obstacles.remove(&cell) {
                return Err(Error::EventConsistency(format!(
                    "cannot remove cell {cell}: not an obstacle"
                )));
            }
        }
        for &cell in &event.add {
            if cell == 0 || cell > self.cell_count() {
                return Err(Error::CellOutOfRange {
                    cell,
                    max: self.cell_count(),
                });
            }
            if !obstacles.insert(cell) {
                return Err(Error::EventConsistency(format!(
                    "cannot add cell {cell}: already an obstacle"
                )));
            }
        }
        Self::new(self.width, self.height, obstacles, self.start, self.target)
    }

    /// Same obstacles and target, new start point.
    pub fn with_start(&self, start: Point) -> Result<Self> {
        let env = Self {
            start,
            ..self.clone()
        };
        env.check_endpoint("start", start)?;
        Ok(env)
    }
}

/// Scripted obstacle move at a given time step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObstacleEvent {
    #[serde(rename = "t")]
    pub time_step: usize,
    #[serde(default)]
    pub remove: Vec<usize>,
    #[serde(default)]
    pub add: Vec<usize>,
}

impl ObstacleEvent {
    pub fn new(time_step: usize, remove: Vec<usize>, add: Vec<usize>) -> Self {
        Self {
            time_step,
            remove,
            add,
        }
    }

    /// The event that undoes this one.
    pub fn inverse(&self) -> Self {
        Self {
            time_step: self.time_step,
            remove: self.add.clone(),
            add: self.remove.clone(),
        }
    }
}

/// Initial environment plus timed obstacle events.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    initial_env: GridEnvironment,
    events: Vec<ObstacleEvent>,
    horizon: usize,
}

impl Scenario {
    /// Validates event ordering and that every event applies cleanly in
    /// sequence.
    pub fn new(
        initial_env: GridEnvironment,
        events: Vec<ObstacleEvent>,
        horizon: usize,
    ) -> Result<Self> {
        let mut env = initial_env.clone();
        let mut last = None;
        for e in &events {
            if let Some(prev) = last {
                if e.time_step <= prev {
                    return Err(Error::EventConsistency(format!(
                        "event times must be strictly increasing ({prev} then {})",
                        e.time_step
                    )));
                }
            }
            if e.time_step > horizon {
                return Err(Error::EventConsistency(format!(
                    "event at t={} is past the horizon {horizon}",
                    e.time_step
                )));
            }
            env = env.apply_event(e)?;
            last = Some(e.time_step);
        }
        Ok(Self {
            initial_env,
            events,
            horizon,
        })
    }

    pub fn initial_env(&self) -> &GridEnvironment {
        &self.initial_env
    }

    pub fn events(&self) -> &[ObstacleEvent] {
        &self.events
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// Environment after every event has fired.
    pub fn final_env(&self) -> GridEnvironment {
        self.events.iter().fold(self.initial_env.clone(), |env, e| {
            env.apply_event(e)
                .expect("events validated at construction")
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env_with(obstacles: &[usize]) -> GridEnvironment {
        GridEnvironment::new(
            10,
            10,
            obstacles.iter().copied(),
            Point::new(0.5, 0.5),
            Point::new(9.5, 9.5),
        )
        .unwrap()
    }

    #[test]
    fn cell_rectangles() {
        let env = env_with(&[]);
        assert_eq!(
            env.cell_to_rect(1).unwrap(),
            Rect::new(Point::new(0.0, 0.0), Point::new(1.0, 1.0))
        );
        assert_eq!(
            env.cell_to_rect(100).unwrap(),
            Rect::new(Point::new(9.0, 9.0), Point::new(10.0, 10.0))
        );
        assert_eq!(
            env.cell_to_rect(62).unwrap(),
            Rect::new(Point::new(1.0, 6.0), Point::new(2.0, 7.0))
        );
        assert!(matches!(
            env.cell_to_rect(0),
            Err(Error::CellOutOfRange { .. })
        ));
        assert!(matches!(
            env.cell_to_rect(101),
            Err(Error::CellOutOfRange { .. })
        ));
    }

    #[test]
    fn occupancy() {
        let env = env_with(&[62]);
        assert!(env.is_point_occupied(Point::new(1.5, 6.5)));
        assert!(!env.is_point_occupied(Point::new(5.0, 5.0)));
        // closed rectangle: the edge counts
        assert!(env.is_point_occupied(Point::new(2.0, 6.5)));
        let empty = env_with(&[]);
        assert!(!empty.is_point_occupied(Point::new(1.5, 6.5)));
    }

    #[test]
    fn obstacle_move_event() {
        let env = env_with(&[22, 23, 62, 72, 77]);
        let before = env.clone();
        let moved = env
            .apply_event(&ObstacleEvent::new(1, vec![62, 72], vec![58, 68]))
            .unwrap();
        assert_eq!(env, before);
        assert_eq!(
            moved.obstacles().iter().copied().collect::<Vec<_>>(),
            vec![22, 23, 58, 68, 77]
        );

        let same = env
            .apply_event(&ObstacleEvent::new(1, vec![], vec![]))
            .unwrap();
        assert_eq!(same, env);

        let bad = env.apply_event(&ObstacleEvent::new(1, vec![99], vec![]));
        assert!(matches!(bad, Err(Error::EventConsistency(_))));
        let dup = env.apply_event(&ObstacleEvent::new(1, vec![], vec![22]));
        assert!(matches!(dup, Err(Error::EventConsistency(_))));
    }

    #[test]
    fn rejects_invalid_environments() {
        let start_blocked =
            GridEnvironment::new(10, 10, [1], Point::new(0.5, 0.5), Point::new(9.5, 9.5));
        assert!(start_blocked.is_err());
        let outside = GridEnvironment::new(10, 10, [], Point::new(-0.5, 0.5), Point::new(9.5, 9.5));
        assert!(outside.is_err());
        let dup = GridEnvironment::new(10, 10, [5, 5], Point::new(0.5, 0.5), Point::new(9.5, 9.5));
        assert!(dup.is_err());
    }

    #[test]
    fn scenario_event_ordering() {
        let env = env_with(&[62, 72]);
        let ok = Scenario::new(
            env.clone(),
            vec![ObstacleEvent::new(3, vec![62, 72], vec![58, 68])],
            10,
        );
        assert!(ok.is_ok());
        assert_eq!(
            ok.unwrap()
                .final_env()
                .obstacles()
                .iter()
                .copied()
                .collect::<Vec<_>>(),
            vec![58, 68]
        );
        let unordered = Scenario::new(
            env.clone(),
            vec![
                ObstacleEvent::new(3, vec![62], vec![58]),
                ObstacleEvent::new(3, vec![72], vec![68]),
            ],
            10,
        );
        assert!(unordered.is_err());
        let late = Scenario::new(env, vec![ObstacleEvent::new(11, vec![], vec![])], 10);
        assert!(late.is_err());
    }
}
