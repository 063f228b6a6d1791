//! SVG rendering of solve traces. Approximate by design: the picture
//! uses f64 throughout and never feeds back into any computation.

use crate::geom::{HalfPlane, IntVec, Point};
use crate::poly::Polyhedron;
use crate::solver::SolveTrace;
use num::ToPrimitive;
use std::fmt::Write;

const SIZE: f64 = 640.0;
const PALETTE: [&str; 8] = [
    "#c0392b", "#2980b9", "#27ae60", "#8e44ad", "#d35400", "#16a085", "#7f8c8d", "#2c3e50",
];

#[derive(Clone, Copy)]
struct Box2 {
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
}

#[derive(Clone, Copy)]
struct Screen {
    world: Box2,
    scale: f64,
}

impl Screen {
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        (
            (x - self.world.x0) * self.scale,
            SIZE - (y - self.world.y0) * self.scale,
        )
    }
}

fn f(q: &Point) -> (f64, f64) {
    (q.x.to_f64().unwrap_or(0.0), q.y.to_f64().unwrap_or(0.0))
}

fn fi(z: &IntVec) -> (f64, f64) {
    (z.x.to_f64().unwrap_or(0.0), z.y.to_f64().unwrap_or(0.0))
}

/// Points the picture should show: instance vertices, iteration
/// vertices, parallelogram corners and pivots.
fn anchors(p: &Polyhedron, trace: &SolveTrace) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = p.points().iter().map(f).collect();
    for rec in &trace.records {
        pts.push(f(&rec.vertex));
        if let Some(frame) = &rec.frame {
            for corner in [&frame.p, &frame.q, &frame.x, &frame.y] {
                pts.push(fi(corner));
            }
        }
        if let Some(z) = &rec.far_out {
            pts.push(fi(z));
        }
    }
    pts.retain(|(x, y)| x.is_finite() && y.is_finite());
    pts
}

fn viewport(pts: &[(f64, f64)]) -> Box2 {
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for (x, y) in pts {
        x0 = x0.min(*x);
        y0 = y0.min(*y);
        x1 = x1.max(*x);
        y1 = y1.max(*y);
    }
    if x0 > x1 {
        return Box2 { x0: -1.0, y0: -1.0, x1: 5.0, y1: 5.0 };
    }
    let side = (x1 - x0).max(y1 - y0).max(1.0);
    let pad = 0.2 * side;
    let cx = 0.5 * (x0 + x1);
    let cy = 0.5 * (y0 + y1);
    let half = 0.5 * side + pad;
    Box2 { x0: cx - half, y0: cy - half, x1: cx + half, y1: cy + half }
}

/// Clip the line a1 x + a2 y = b to the viewport rectangle.
fn clip_line(row_a: (f64, f64), b: f64, v: &Box2) -> Option<((f64, f64), (f64, f64))> {
    let (a1, a2) = row_a;
    let mut hits: Vec<(f64, f64)> = Vec::new();
    let push = |x: f64, y: f64, hits: &mut Vec<(f64, f64)>| {
        let eps = 1e-9 * (v.x1 - v.x0);
        if x >= v.x0 - eps && x <= v.x1 + eps && y >= v.y0 - eps && y <= v.y1 + eps {
            hits.push((x, y));
        }
    };
    if a2.abs() > 1e-12 {
        for x in [v.x0, v.x1] {
            push(x, (b - a1 * x) / a2, &mut hits);
        }
    }
    if a1.abs() > 1e-12 {
        for y in [v.y0, v.y1] {
            push((b - a2 * y) / a1, y, &mut hits);
        }
    }
    hits.sort_by(|p, q| p.partial_cmp(q).unwrap());
    hits.dedup_by(|p, q| (p.0 - q.0).abs() + (p.1 - q.1).abs() < 1e-9);
    if hits.len() < 2 {
        None
    } else {
        Some((hits[0], *hits.last().unwrap()))
    }
}

/// Viewport rectangle clipped against pi0 <= pi.x <= pi0 + 1.
fn clip_strip(pi: (f64, f64), pi0: f64, v: &Box2) -> Vec<(f64, f64)> {
    let mut poly = vec![(v.x0, v.y0), (v.x1, v.y0), (v.x1, v.y1), (v.x0, v.y1)];
    for (sign, rhs) in [(1.0, pi0 + 1.0), (-1.0, -pi0)] {
        let inside = |p: &(f64, f64)| sign * (pi.0 * p.0 + pi.1 * p.1) <= rhs + 1e-9;
        let mut next = Vec::new();
        for i in 0..poly.len() {
            let cur = poly[i];
            let prev = poly[(i + poly.len() - 1) % poly.len()];
            let (vc, vp) = (inside(&cur), inside(&prev));
            if vc != vp {
                let fc = sign * (pi.0 * cur.0 + pi.1 * cur.1) - rhs;
                let fp = sign * (pi.0 * prev.0 + pi.1 * prev.1) - rhs;
                let t = fp / (fp - fc);
                next.push((prev.0 + t * (cur.0 - prev.0), prev.1 + t * (cur.1 - prev.1)));
            }
            if vc {
                next.push(cur);
            }
        }
        poly = next;
        if poly.is_empty() {
            break;
        }
    }
    poly
}

fn row_f64(row: &HalfPlane) -> ((f64, f64), f64) {
    (
        (row.a.x.to_f64().unwrap_or(0.0), row.a.y.to_f64().unwrap_or(0.0)),
        row.b.to_f64().unwrap_or(0.0),
    )
}

fn line_svg(out: &mut String, s: &Screen, seg: ((f64, f64), (f64, f64)), style: &str) {
    let (p, q) = (s.map(seg.0 .0, seg.0 .1), s.map(seg.1 .0, seg.1 .1));
    let _ = writeln!(
        out,
        r#"  <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" {} />"#,
        p.0, p.1, q.0, q.1, style
    );
}

/// Render the instance rows and the trace: original rows gray, each
/// iteration's split strip shaded and its cut drawn in the iteration
/// color, pivots as filled dots.
pub fn render_trace(p: &Polyhedron, trace: &SolveTrace) -> String {
    let world = viewport(&anchors(p, trace));
    let screen = Screen { world, scale: SIZE / (world.x1 - world.x0) };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"  <rect width="{SIZE}" height="{SIZE}" fill="white" />"#);

    // Lattice dots inside the viewport, when the zoom makes them legible.
    if world.x1 - world.x0 <= 64.0 {
        let (mut x, x_hi) = (world.x0.ceil(), world.x1.floor());
        while x <= x_hi {
            let (mut y, y_hi) = (world.y0.ceil(), world.y1.floor());
            while y <= y_hi {
                let (sx, sy) = screen.map(x, y);
                let _ = writeln!(
                    out,
                    r##"  <circle cx="{sx:.2}" cy="{sy:.2}" r="1.5" fill="#d0d0d0" />"##
                );
                y += 1.0;
            }
            x += 1.0;
        }
    }

    for row in p.rows() {
        let (a, b) = row_f64(row);
        if let Some(seg) = clip_line(a, b, &world) {
            line_svg(&mut out, &screen, seg, r##"stroke="#999999" stroke-width="1.5""##);
        }
    }

    for (i, rec) in trace.records.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        if let Some(frame) = &rec.frame {
            let pi = (
                frame.pi.x.to_f64().unwrap_or(0.0),
                frame.pi.y.to_f64().unwrap_or(0.0),
            );
            let pi0 = frame.pi0.to_f64().unwrap_or(0.0);
            let strip = clip_strip(pi, pi0, &world);
            if strip.len() >= 3 {
                let pts: Vec<String> = strip
                    .iter()
                    .map(|(x, y)| {
                        let (sx, sy) = screen.map(*x, *y);
                        format!("{sx:.2},{sy:.2}")
                    })
                    .collect();
                let _ = writeln!(
                    out,
                    r#"  <polygon points="{}" fill="{color}" fill-opacity="0.08" stroke="none" />"#,
                    pts.join(" ")
                );
            }
        }
        let (a, b) = row_f64(&rec.cut);
        if let Some(seg) = clip_line(a, b, &world) {
            line_svg(
                &mut out,
                &screen,
                seg,
                &format!(r#"stroke="{color}" stroke-width="2" stroke-dasharray="6 3""#),
            );
        }
        let (vx, vy) = f(&rec.vertex);
        let (sx, sy) = screen.map(vx, vy);
        let _ = writeln!(
            out,
            r#"  <circle cx="{sx:.2}" cy="{sy:.2}" r="4" fill="none" stroke="{color}" stroke-width="1.5" />"#
        );
        if let Some(frame) = &rec.frame {
            let (px, py) = fi(&frame.p);
            let (sx, sy) = screen.map(px, py);
            let _ = writeln!(out, r#"  <circle cx="{sx:.2}" cy="{sy:.2}" r="3.5" fill="{color}" />"#);
        }
    }
    out.push_str("</svg>\n");
    out
}
