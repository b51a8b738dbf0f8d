//! SVG rendering of a Farey path in the unit-disk model.
//!
//! A slope `t` sits at angle `2·atan(t)` on the boundary circle, so `0` is at
//! the right, `∞` at the left and counterclockwise order on the page matches
//! the counterclockwise order of slopes. Edges are drawn as hyperbolic
//! geodesics, i.e. circular arcs meeting the boundary at right angles.

use std::f64::consts::PI;
use std::fmt::Write;

use crate::farey::FareyPath;
use crate::rational::Slope;

const SIZE: f64 = 480.0;
const RADIUS: f64 = 200.0;

fn angle(s: Slope) -> f64 {
    if s.is_infinite() {
        PI
    } else {
        2.0 * (s.num() as f64 / s.den() as f64).atan()
    }
}

/// Page coordinates of the boundary point at angle `theta`.
fn point(theta: f64) -> (f64, f64) {
    let c = SIZE / 2.0;
    (c + RADIUS * theta.cos(), c - RADIUS * theta.sin())
}

fn geodesic(from: Slope, to: Slope) -> String {
    let (a, b) = (angle(from), angle(to));
    let (x1, y1) = point(a);
    let (x2, y2) = point(b);
    let mut delta = b - a;
    while delta <= -PI {
        delta += 2.0 * PI;
    }
    while delta > PI {
        delta -= 2.0 * PI;
    }
    if (delta.abs() - PI).abs() < 1e-9 {
        return format!("M {x1:.3} {y1:.3} L {x2:.3} {y2:.3}");
    }
    let r = RADIUS * (delta.abs() / 2.0).tan();
    let sweep = if delta > 0.0 { 0 } else { 1 };
    format!("M {x1:.3} {y1:.3} A {r:.3} {r:.3} 0 0 {sweep} {x2:.3} {y2:.3}")
}

pub fn farey_path_svg(title: &str, path: &FareyPath) -> String {
    let c = SIZE / 2.0;
    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    writeln!(svg, "  <title>{title}</title>").unwrap();
    writeln!(
        svg,
        r##"  <circle cx="{c}" cy="{c}" r="{RADIUS}" fill="none" stroke="#888" stroke-width="1"/>"##
    )
    .unwrap();
    for (from, to) in path.edges() {
        writeln!(
            svg,
            r##"  <path d="{}" fill="none" stroke="#1f5fbf" stroke-width="2"/>"##,
            geodesic(from, to)
        )
        .unwrap();
    }
    for &v in path.vertices() {
        let (x, y) = point(angle(v));
        let (lx, ly) = (c + (x - c) * 1.09, c + (y - c) * 1.09);
        writeln!(svg, r##"  <circle cx="{x:.3}" cy="{y:.3}" r="3" fill="#c0392b"/>"##).unwrap();
        writeln!(
            svg,
            r#"  <text x="{lx:.3}" y="{ly:.3}" font-size="11" text-anchor="middle">{v}</text>"#
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");
    svg
}
