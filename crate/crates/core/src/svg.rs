//! Deterministic SVG rendering of space curves as three orthographic
//! projections (XY, XZ, YZ) placed side by side.

use std::fmt::Write;

use crate::curve::Vec3;
use crate::error::{Error, Result};

/// Width and height of each projection panel, in user units.
const PANEL: f64 = 300.0;
const GAP: f64 = 20.0;
const LABEL_HEIGHT: f64 = 24.0;
const MARGIN_FRACTION: f64 = 0.05;

const PROJECTIONS: [(&str, usize, usize); 3] = [("XY", 0, 1), ("XZ", 0, 2), ("YZ", 1, 2)];

/// Bounds of one axis pair, padded by 5% and made square so projections keep
/// their aspect ratio. Zero extents (planar or straight curves) get a unit
/// window around the data.
fn window(points: &[Vec3], a: usize, b: usize) -> (f64, f64, f64) {
    let bounds = |k: usize| {
        points
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p[k]), hi.max(p[k])))
    };
    let (xa, xb) = bounds(a);
    let (ya, yb) = bounds(b);
    let mut extent = (xb - xa).max(yb - ya);
    if extent <= f64::EPSILON * (1.0 + xa.abs().max(ya.abs())) {
        extent = 1.0;
    }
    let size = extent * (1.0 + 2.0 * MARGIN_FRACTION);
    let x0 = 0.5 * (xa + xb) - 0.5 * size;
    let y0 = 0.5 * (ya + yb) - 0.5 * size;
    (x0, y0, size)
}

/// Fixed-precision coordinate, with `-0.000` normalized to `0.000`.
fn coord(v: f64) -> String {
    let s = format!("{v:.3}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.000".to_string()
    } else {
        s
    }
}

/// Renders `points` as one `<svg>` document with three `<g>` panels, each
/// holding a labelled `<polyline>`. Identical input gives identical bytes.
pub fn render(title: &str, points: &[Vec3]) -> Result<String> {
    if points.len() < 2 {
        return Err(Error::domain("an SVG plot needs at least two points"));
    }
    if let Some(i) = points.iter().position(|p| !p.iter().all(|v| v.is_finite())) {
        return Err(Error::Evaluation { param: i as f64 }.at_node(i));
    }
    let width = 3.0 * PANEL + 4.0 * GAP;
    let height = PANEL + LABEL_HEIGHT + 2.0 * GAP;
    let mut out = String::new();
    // Writing into a String cannot fail.
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {} {}" width="{}" height="{}">"#,
        width, height, width, height
    );
    let _ = writeln!(out, "  <title>{}</title>", escape(title));
    let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    for (k, (label, a, b)) in PROJECTIONS.iter().enumerate() {
        let (x0, y0, size) = window(points, *a, *b);
        let left = GAP + k as f64 * (PANEL + GAP);
        let top = GAP + LABEL_HEIGHT;
        let scale = PANEL / size;
        let _ = writeln!(out, r#"  <g id="{label}">"#);
        let _ = writeln!(
            out,
            r#"    <text x="{}" y="{}" font-family="sans-serif" font-size="14">{label}</text>"#,
            coord(left),
            coord(GAP + 14.0)
        );
        let _ = writeln!(
            out,
            r##"    <rect x="{}" y="{}" width="{PANEL}" height="{PANEL}" fill="none" stroke="#999999"/>"##,
            coord(left),
            coord(top)
        );
        let coords: Vec<String> = points
            .iter()
            .map(|p| {
                let x = left + (p[*a] - x0) * scale;
                let y = top + PANEL - (p[*b] - y0) * scale;
                format!("{},{}", coord(x), coord(y))
            })
            .collect();
        let _ = writeln!(
            out,
            r##"    <polyline fill="none" stroke="#1f4e9e" stroke-width="1.5" points="{}"/>"##,
            coords.join(" ")
        );
        let _ = writeln!(out, "  </g>");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
