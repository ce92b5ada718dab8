//! SVG rendering of planar vortexes.

use std::fmt::Write;

use crate::complex::PlanarVortex;
use crate::feature::Quantum;
use crate::geometry::Coord;

const FILL: &str = "#dde6f2";
const HOLE_FILL: &str = "#ffffff";
const STROKE: &str = "#1f3a5f";
const BRIDGE: &str = "#b03a2e";

/// Renders cycles as polygons (outermost first), then bridges as lines, then
/// vertices as circles in id order. The y axis points up.
pub fn render_svg(vortex: &PlanarVortex, quantum: Quantum) -> String {
    let to_xy = |c: Coord| (quantum.to_f64(c.x), -quantum.to_f64(c.y));
    let (mut min_x, mut min_y, mut max_x, mut max_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for v in vortex.vertices() {
        let (x, y) = to_xy(v.position);
        min_x = min_x.min(x);
        min_y = min_y.min(y);
        max_x = max_x.max(x);
        max_y = max_y.max(y);
    }
    let extent = (max_x - min_x).max(max_y - min_y).max(f64::EPSILON);
    let margin = extent * 0.05;
    let radius = extent * 0.012;
    let stroke = extent * 0.004;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        num(min_x - margin),
        num(min_y - margin),
        num(max_x - min_x + 2.0 * margin),
        num(max_y - min_y + 2.0 * margin)
    );
    for (i, cycle) in vortex.cycles().iter().enumerate() {
        let points: Vec<String> = vortex
            .ring_coords(i)
            .into_iter()
            .map(|c| {
                let (x, y) = to_xy(c);
                format!("{},{}", num(x), num(y))
            })
            .collect();
        let fill = if cycle.filled() { FILL } else { HOLE_FILL };
        let _ = writeln!(
            out,
            r#"  <polygon points="{}" fill="{fill}" stroke="{STROKE}" stroke-width="{}"/>"#,
            points.join(" "),
            num(stroke)
        );
    }
    for bridge in vortex.bridges() {
        let (x1, y1) = to_xy(vortex.position(bridge.a).unwrap_or(Coord::new(0, 0)));
        let (x2, y2) = to_xy(vortex.position(bridge.b).unwrap_or(Coord::new(0, 0)));
        let _ = writeln!(
            out,
            r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{BRIDGE}" stroke-width="{}"/>"#,
            num(x1),
            num(y1),
            num(x2),
            num(y2),
            num(stroke * 1.5)
        );
    }
    for v in vortex.vertices() {
        let (x, y) = to_xy(v.position);
        let _ = writeln!(
            out,
            r#"  <circle id="v{}" cx="{}" cy="{}" r="{}" fill="{STROKE}"/>"#,
            v.id,
            num(x),
            num(y),
            num(radius)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn num(x: f64) -> String {
    let s = format!("{:.6}", x + 0.0);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}
