//! SVG rendering of worlds, paths and replanning runs.
//!
//! Output is plain text built with fixed float precision, so the same input
//! always renders to the same bytes.

use std::fmt::Write;

use crate::grid::{GridEnvironment, Point};
use crate::objective::Path;
use crate::replan::ReplanTrace;

const CELL_PX: f64 = 40.0;
const MARGIN_PX: f64 = 24.0;
const LEGEND_ROW_PX: f64 = 18.0;

const COLORS: [&str; 6] = [
    "#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];
const DASHES: [&str; 3] = ["", "6 3", "2 3"];

/// Maps world coordinates to pixels inside one panel.
struct Frame {
    dx: f64,
    dy: f64,
    height: usize,
}

impl Frame {
    fn x(&self, x: f64) -> f64 {
        self.dx + MARGIN_PX + x * CELL_PX
    }

    fn y(&self, y: f64) -> f64 {
        self.dy + MARGIN_PX + (self.height as f64 - y) * CELL_PX
    }
}

fn panel_size(env: &GridEnvironment) -> (f64, f64) {
    (
        env.width() as f64 * CELL_PX + 2.0 * MARGIN_PX,
        env.height() as f64 * CELL_PX + 2.0 * MARGIN_PX,
    )
}

fn draw_grid(out: &mut String, env: &GridEnvironment, f: &Frame) {
    for cell in 1..=env.cell_count() {
        let r = env.cell_to_rect(cell).expect("cell in range");
        let fill = if env.obstacles().contains(&cell) {
            "#555555"
        } else {
            "#ffffff"
        };
        let _ = writeln!(
            out,
            r##"<rect x="{:.2}" y="{:.2}" width="{CELL_PX:.2}" height="{CELL_PX:.2}" fill="{fill}" stroke="#cccccc" stroke-width="1"/>"##,
            f.x(r.min.x),
            f.y(r.max.y),
        );
        let c = r.center();
        let color = if env.obstacles().contains(&cell) {
            "#dddddd"
        } else {
            "#999999"
        };
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="10" font-family="monospace" text-anchor="middle" fill="{color}">{cell}</text>"#,
            f.x(c.x),
            f.y(c.y) + 3.5,
        );
    }
}

fn draw_path(out: &mut String, path: &Path, f: &Frame, index: usize) {
    let color = COLORS[index % COLORS.len()];
    let dash = DASHES[(index / COLORS.len()) % DASHES.len()];
    let points: Vec<String> = path
        .waypoints()
        .iter()
        .map(|p| format!("{:.2},{:.2}", f.x(p.x), f.y(p.y)))
        .collect();
    let dash_attr = if dash.is_empty() {
        String::new()
    } else {
        format!(r#" stroke-dasharray="{dash}""#)
    };
    let _ = writeln!(
        out,
        r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2.5"{dash_attr}/>"#,
        points.join(" ")
    );
    for p in path.waypoints() {
        let _ = writeln!(
            out,
            r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{color}"/>"#,
            f.x(p.x),
            f.y(p.y)
        );
    }
}

fn draw_endpoints(out: &mut String, start: Point, target: Point, f: &Frame) {
    let s = 7.0;
    let _ = writeln!(
        out,
        r##"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="#2ca02c" stroke="#000000"/>"##,
        f.x(start.x) - s,
        f.y(start.y) - s,
        2.0 * s,
        2.0 * s
    );
    let (tx, ty) = (f.x(target.x), f.y(target.y));
    let _ = writeln!(
        out,
        r##"<polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="#ffd700" stroke="#000000"/>"##,
        tx,
        ty - s - 2.0,
        tx + s + 2.0,
        ty,
        tx,
        ty + s + 2.0,
        tx - s - 2.0,
        ty
    );
}

fn draw_legend(out: &mut String, labels: &[&str], x: f64, y: f64) {
    for (i, label) in labels.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let row = y + i as f64 * LEGEND_ROW_PX;
        let _ = writeln!(
            out,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="3"/>"#,
            x,
            row,
            x + 20.0,
            row
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="12" font-family="sans-serif">{}</text>"#,
            x + 26.0,
            row + 4.0,
            escape(label)
        );
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn document(width: f64, height: f64, body: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" viewBox=\"0 0 {width:.0} {height:.0}\">\n<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n{body}</svg>\n"
    )
}

/// Draws the world with numbered cells, shaded obstacles, each labelled path
/// in its own color, and the start (square) and target (diamond) markers.
pub fn render_svg(env: &GridEnvironment, paths: &[(Path, &str)]) -> String {
    let (w, h) = panel_size(env);
    let f = Frame {
        dx: 0.0,
        dy: 0.0,
        height: env.height(),
    };
    let mut body = String::new();
    draw_grid(&mut body, env, &f);
    for (i, (path, _)) in paths.iter().enumerate() {
        draw_path(&mut body, path, &f, i);
    }
    draw_endpoints(&mut body, env.start(), env.target(), &f);
    let labels: Vec<&str> = paths.iter().map(|(_, l)| *l).collect();
    draw_legend(&mut body, &labels, MARGIN_PX, h + 4.0);
    document(w, h + labels.len() as f64 * LEGEND_ROW_PX + 8.0, &body)
}

/// One panel per environment snapshot of a replanning run. Each panel shows
/// the obstacles of that snapshot, the plans made in it and the robot
/// positions visited while it was active.
pub fn render_storyboard(trace: &ReplanTrace) -> String {
    let Some(first) = trace.snapshots.first() else {
        return document(0.0, 0.0, "");
    };
    let (w, h) = panel_size(first);
    let mut body = String::new();
    for (id, env) in trace.snapshots.iter().enumerate() {
        let f = Frame {
            dx: id as f64 * w,
            dy: 20.0,
            height: env.height(),
        };
        let steps: Vec<_> = trace
            .steps
            .iter()
            .filter(|s| s.env_snapshot_id == id)
            .collect();
        let from = steps.first().map_or(0, |s| s.time_step);
        let _ = writeln!(
            body,
            r#"<text x="{:.2}" y="16" font-size="13" font-family="sans-serif">snapshot {id} (t = {from})</text>"#,
            f.dx + MARGIN_PX
        );
        draw_grid(&mut body, env, &f);
        for (k, s) in steps.iter().filter(|s| s.replanned).enumerate() {
            draw_path(&mut body, &s.plan, &f, id + k);
        }
        for s in &steps {
            let fill = if s.planning_failed {
                "#ff0000"
            } else {
                "#000000"
            };
            let _ = writeln!(
                body,
                r#"<circle cx="{:.2}" cy="{:.2}" r="2" fill="{fill}"/>"#,
                f.x(s.robot_position.x),
                f.y(s.robot_position.y)
            );
        }
        let start = steps.first().map_or(env.start(), |s| s.robot_position);
        draw_endpoints(&mut body, start, env.target(), &f);
    }
    document(w * trace.snapshots.len() as f64, h + 20.0, &body)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_is_deterministic_and_complete() {
        let env =
            GridEnvironment::new(3, 2, [2], Point::new(0.5, 0.5), Point::new(2.5, 1.5)).unwrap();
        let a = Path::straight(&env, 3).unwrap();
        let b = Path::new(vec![env.start(), Point::new(0.5, 1.5), env.target()]).unwrap();
        let svg = render_svg(&env, &[(a.clone(), "ps"), (b.clone(), "ga <seed 1>")]);
        assert_eq!(svg, render_svg(&env, &[(a, "ps"), (b, "ga <seed 1>")]));
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains(COLORS[0]) && svg.contains(COLORS[1]));
        assert!(svg.contains(">6</text>"));
        assert!(svg.contains("#555555"));
        assert!(svg.contains("ga &lt;seed 1&gt;"));
    }

    #[test]
    fn empty_and_single_path() {
        let env =
            GridEnvironment::new(4, 4, [6, 7], Point::new(0.5, 0.5), Point::new(3.5, 3.5)).unwrap();
        let bare = render_svg(&env, &[]);
        assert_eq!(bare.matches("<polyline").count(), 0);
        assert_eq!(bare.matches("fill=\"#555555\"").count(), 2);
        let one = Path::straight(&env, 5).unwrap();
        let svg = render_svg(&env, &[(one, "ps")]);
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert_eq!(svg.matches("r=\"3\"").count(), 5);
    }

    #[test]
    fn bottom_row_is_drawn_lowest() {
        let f = Frame {
            dx: 0.0,
            dy: 0.0,
            height: 10,
        };
        assert!(f.y(0.0) > f.y(10.0));
        assert_eq!(f.x(0.0), MARGIN_PX);
    }
}
