//! Distance, heading and segment/obstacle clearance primitives.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::grid::{GridEnvironment, Point, Rect};

/// Straight path line between two points. Zero-length segments are allowed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub const fn new(a: Point, b: Point) -> Self {
        Self { a, b }
    }

    pub fn length(&self) -> f64 {
        euclidean(self.a, self.b)
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    /// Point at parameter `t` in `[0, 1]`.
    pub fn lerp(&self, t: f64) -> Point {
        Point::new(
            self.a.x + t * (self.b.x - self.a.x),
            self.a.y + t * (self.b.y - self.a.y),
        )
    }
}

pub fn euclidean(p: Point, q: Point) -> f64 {
    (q.x - p.x).hypot(q.y - p.y)
}

/// Four-quadrant direction of `q - p` in `(-pi, pi]`.
pub fn heading(p: Point, q: Point) -> Result<f64> {
    if p == q {
        return Err(Error::DegenerateSegment { x: p.x, y: p.y });
    }
    Ok((q.y - p.y).atan2(q.x - p.x))
}

/// `h2 - h1` wrapped into `(-pi, pi]`.
pub fn turn_angle(h1: f64, h2: f64) -> f64 {
    wrap_angle(h2 - h1)
}

pub fn wrap_angle(a: f64) -> f64 {
    let mut w = a.rem_euclid(2.0 * PI);
    if w > PI {
        w -= 2.0 * PI;
    }
    w
}

fn point_rect_distance(p: Point, r: &Rect) -> f64 {
    let dx = (r.min.x - p.x).max(0.0).max(p.x - r.max.x);
    let dy = (r.min.y - p.y).max(0.0).max(p.y - r.max.y);
    dx.hypot(dy)
}

fn point_segment_distance(p: Point, s: &Segment) -> f64 {
    let dx = s.b.x - s.a.x;
    let dy = s.b.y - s.a.y;
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return euclidean(p, s.a);
    }
    let t = (((p.x - s.a.x) * dx + (p.y - s.a.y) * dy) / len2).clamp(0.0, 1.0);
    euclidean(p, s.lerp(t))
}

/// Liang-Barsky clip against the closed rectangle.
fn clips(s: &Segment, r: &Rect) -> bool {
    let d = [s.b.x - s.a.x, s.b.y - s.a.y];
    let origin = [s.a.x, s.a.y];
    let lo = [r.min.x, r.min.y];
    let hi = [r.max.x, r.max.y];
    let (mut t0, mut t1) = (0.0_f64, 1.0_f64);
    for axis in 0..2 {
        if d[axis] == 0.0 {
            if origin[axis] < lo[axis] || origin[axis] > hi[axis] {
                return false;
            }
            continue;
        }
        let inv = 1.0 / d[axis];
        let mut ta = (lo[axis] - origin[axis]) * inv;
        let mut tb = (hi[axis] - origin[axis]) * inv;
        if ta > tb {
            std::mem::swap(&mut ta, &mut tb);
        }
        t0 = t0.max(ta);
        t1 = t1.min(tb);
        if t0 > t1 {
            return false;
        }
    }
    true
}

/// Minimum distance between a segment and a closed rectangle; zero when they
/// touch or overlap.
pub fn segment_rect_distance(s: &Segment, r: &Rect) -> f64 {
    if clips(s, r) {
        return 0.0;
    }
    // Disjoint convex sets: the minimum is attained at a vertex of one of them.
    let from_ends = point_rect_distance(s.a, r).min(point_rect_distance(s.b, r));
    r.corners()
        .iter()
        .map(|&c| point_segment_distance(c, s))
        .fold(from_ends, f64::min)
}

pub fn segment_intersects_rect(s: &Segment, r: &Rect) -> bool {
    segment_rect_distance(s, r) == 0.0
}

/// Smallest clearance from the segment to any obstacle cell, or
/// `f64::INFINITY` when there are no obstacles.
pub fn min_clearance(s: &Segment, env: &GridEnvironment) -> f64 {
    env.obstacle_rects()
        .map(|r| segment_rect_distance(s, &r))
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    use super::*;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Rect {
        Rect::new(p(x0, y0), p(x1, y1))
    }

    #[test]
    fn distances() {
        assert_eq!(euclidean(p(0.0, 0.0), p(3.0, 4.0)), 5.0);
        assert_eq!(euclidean(p(1.0, 1.0), p(1.0, 1.0)), 0.0);
        assert!((euclidean(p(0.0, 0.0), p(1.0, 1.0)) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn headings() {
        assert_eq!(heading(p(0.0, 0.0), p(1.0, 0.0)).unwrap(), 0.0);
        assert!((heading(p(0.0, 0.0), p(1.0, 1.0)).unwrap() - FRAC_PI_4).abs() < 1e-15);
        assert!((heading(p(0.0, 0.0), p(0.0, 1.0)).unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert!(matches!(
            heading(p(2.0, 2.0), p(2.0, 2.0)),
            Err(Error::DegenerateSegment { .. })
        ));
        assert_eq!(heading(p(0.0, 0.0), p(-1.0, 0.0)).unwrap(), PI);
    }

    #[test]
    fn turns() {
        assert!((turn_angle(0.0, FRAC_PI_2) - FRAC_PI_2).abs() < 1e-15);
        assert_eq!(turn_angle(1.0, 1.0), 0.0);
        assert!((turn_angle(3.0 * FRAC_PI_4, -3.0 * FRAC_PI_4) - FRAC_PI_2).abs() < 1e-12);
        assert_eq!(turn_angle(0.0, PI), PI);
        assert_eq!(turn_angle(PI, 0.0), PI);
    }

    #[test]
    fn segment_rect_cases() {
        let r = rect(1.0, 0.0, 2.0, 1.0);
        assert_eq!(
            segment_rect_distance(&Segment::new(p(0.0, 0.0), p(0.0, 2.0)), &r),
            1.0
        );
        assert_eq!(
            segment_rect_distance(&Segment::new(p(0.0, 0.5), p(3.0, 0.5)), &r),
            0.0
        );
        // value frozen from a 10^4-sample oracle and an exact polygon distance
        let d = segment_rect_distance(
            &Segment::new(p(0.0, 0.0), p(1.0, 3.0)),
            &rect(2.0, 2.0, 3.0, 3.0),
        );
        assert!((d - 1.0).abs() < 1e-12);

        assert!(segment_intersects_rect(
            &Segment::new(p(0.0, 0.5), p(3.0, 0.5)),
            &r
        ));
        assert!(!segment_intersects_rect(
            &Segment::new(p(0.0, 1.5), p(3.0, 1.5)),
            &r
        ));
        assert!(segment_intersects_rect(
            &Segment::new(p(0.0, 1.0), p(3.0, 1.0)),
            &r
        ));
    }

    #[test]
    fn corner_touch_and_degenerate_segments() {
        let r = rect(2.0, 2.0, 3.0, 3.0);
        assert!(segment_intersects_rect(
            &Segment::new(p(0.0, 0.0), p(2.0, 2.0)),
            &r
        ));
        assert!(segment_intersects_rect(
            &Segment::new(p(0.0, 4.0), p(4.0, 0.0)),
            &r
        ));
        let inside = Segment::new(p(2.5, 2.5), p(2.5, 2.5));
        assert!(segment_intersects_rect(&inside, &r));
        let outside = Segment::new(p(0.0, 2.5), p(0.0, 2.5));
        assert_eq!(segment_rect_distance(&outside, &r), 2.0);
    }

    #[test]
    fn clearance_over_environment() {
        let empty = GridEnvironment::open_10x10();
        let s = Segment::new(p(0.0, 0.0), p(0.0, 9.0));
        assert!(min_clearance(&s, &empty) >= empty.diagonal());

        let env = GridEnvironment::new(10, 10, [62, 72], p(0.5, 0.5), p(9.5, 9.5)).unwrap();
        assert_eq!(min_clearance(&s, &env), 1.0);
        let crossing = Segment::new(p(0.5, 6.5), p(9.5, 6.5));
        assert_eq!(min_clearance(&crossing, &env), 0.0);
    }
}
