//! SVG projection of a map onto a pair of coordinate axes.

use std::collections::BTreeSet;
use std::fmt::Write;

use num_traits::ToPrimitive;

use tropmap_core::exactgeom::{Rat, RatVec};
use tropmap_core::maps::TropicalStableMap;
use tropmap_core::wellspaced::is_well_spaced;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 30.0;

#[derive(Clone, Debug, PartialEq)]
pub struct PlotOptions {
    pub axes: (usize, usize),
    /// Length at which legs are cut off.
    pub radius: f64,
}

impl Default for PlotOptions {
    fn default() -> Self {
        PlotOptions { axes: (0, 1), radius: 3.0 }
    }
}

fn f(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Draws vertices, bounded edges and truncated legs. For genus one maps with
/// a hyperplane through the cycle, the subcurve `⊏_H` of the first failing
/// flat (or the first flat) is overlaid in red with its boundary vertices.
pub fn render_svg(m: &TropicalStableMap, opt: &PlotOptions) -> Result<String, String> {
    let n = m.ambient_dim();
    let (i, j) = opt.axes;
    if i >= n || j >= n || i == j {
        return Err(format!("axes must be two distinct coordinates below {n}"));
    }
    let pt = |p: &RatVec| (f(&p.0[i]), f(&p.0[j]));
    let mut segments: Vec<(String, (f64, f64), (f64, f64))> = Vec::new();
    let mut loops: Vec<(String, (f64, f64))> = Vec::new();
    for (id, e) in &m.curve.edges {
        let Some(d) = m.edge_data.get(id) else { continue };
        if m.curve.is_leg(id) {
            let inner = e.ends.iter().find(|v| !m.curve.is_marked_vertex(v));
            let Some(p) = inner.and_then(|v| m.positions.get(v)) else { continue };
            let (x, y) = pt(p);
            let u = d.direction.to_rat();
            let sign = if inner.is_some_and(|v| *v == d.tail) { 1.0 } else { -1.0 };
            let (ux, uy) = (sign * f(&u.0[i]), sign * f(&u.0[j]));
            let norm = (ux * ux + uy * uy).sqrt();
            if norm > 0.0 {
                let k = opt.radius / norm;
                segments.push((id.clone(), (x, y), (x + k * ux, y + k * uy)));
            }
        } else if e.is_loop() {
            if let Some(p) = m.positions.get(&e.ends[0]) {
                loops.push((id.clone(), pt(p)));
            }
        } else if let (Some(a), Some(b)) = (m.positions.get(&e.ends[0]), m.positions.get(&e.ends[1])) {
            segments.push((id.clone(), pt(a), pt(b)));
        }
    }
    let points: Vec<(String, (f64, f64))> =
        m.positions.iter().map(|(v, p)| (v.clone(), pt(p))).collect();
    let (mut lo, mut hi) = ((f64::MAX, f64::MAX), (f64::MIN, f64::MIN));
    let all = points.iter().map(|x| x.1).chain(segments.iter().flat_map(|s| [s.1, s.2]));
    for (x, y) in all {
        lo = (lo.0.min(x), lo.1.min(y));
        hi = (hi.0.max(x), hi.1.max(y));
    }
    if lo.0 > hi.0 {
        lo = (-1.0, -1.0);
        hi = (1.0, 1.0);
    }
    let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-9);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let tx = |(x, y): (f64, f64)| (MARGIN + (x - lo.0) * scale, SIZE - MARGIN - (y - lo.1) * scale);

    let (mut h_edges, mut h_boundary) = (BTreeSet::new(), BTreeSet::new());
    if let Ok(r) = is_well_spaced(m) {
        if let Some(rec) = r.flats.get(r.witness.unwrap_or(0)) {
            h_edges.extend(rec.subcurve.edges.iter().cloned());
            h_boundary.extend(rec.subcurve.boundary.iter().map(|b| b.0.clone()));
        }
    }

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (id, a, b) in &segments {
        let ((x1, y1), (x2, y2)) = (tx(*a), tx(*b));
        let (colour, width) = if h_edges.contains(id) { ("#c0392b", 2.5) } else { ("#333333", 1.2) };
        let dash = if m.curve.is_leg(id) { r#" stroke-dasharray="4 3""# } else { "" };
        let _ = writeln!(
            s,
            r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{colour}" stroke-width="{width}"{dash}><title>{}</title></line>"#,
            xml_escape(id)
        );
    }
    for (id, p) in &loops {
        let (x, y) = tx(*p);
        let colour = if h_edges.contains(id) { "#c0392b" } else { "#333333" };
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="8" fill="none" stroke="{colour}"><title>{}</title></circle>"#,
            x,
            y - 8.0,
            xml_escape(id)
        );
    }
    for (v, p) in &points {
        let (x, y) = tx(*p);
        let fill = if h_boundary.contains(v) { "#c0392b" } else { "#000000" };
        let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="{fill}"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" font-size="10" font-family="sans-serif">{}</text>"#,
            x + 4.0,
            y - 4.0,
            xml_escape(v)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}
