//! SVG 1.1 drawings of planar triangulations.

use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::arith::RationalPoint;
use crate::error::{Error, Result};
use crate::geometry::Triangulation;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;
const FILLS: [&str; 6] = ["#e4572e", "#29335c", "#f3a712", "#669bbc", "#a8c686", "#8e5572"];

fn xy(p: &RationalPoint) -> (f64, f64) {
    let c = p.coords();
    let x = c[0].to_f64().unwrap_or(0.0);
    let y = c[1].to_f64().unwrap_or(0.0);
    (MARGIN + x * (SIZE - 2.0 * MARGIN), SIZE - MARGIN - y * (SIZE - 2.0 * MARGIN))
}

fn shape(out: &mut String, pts: &[RationalPoint], style: &str) {
    let coords: Vec<String> = pts
        .iter()
        .map(|p| {
            let (x, y) = xy(p);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    match pts.len() {
        1 => {
            let (x, y) = xy(&pts[0]);
            let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" {style}/>"#);
        }
        2 => {
            let _ = writeln!(out, r#"<polyline points="{}" {style}/>"#, coords.join(" "));
        }
        _ => {
            let _ = writeln!(out, r#"<polygon points="{}" {style}/>"#, coords.join(" "));
        }
    }
}

/// Draws `t` inside the unit square, vertices labelled by their homogeneous
/// coordinates. Each triangulation in `highlight` is shaded in its own color.
pub fn render_svg(t: &Triangulation, highlight: &[Triangulation]) -> Result<String> {
    for u in std::iter::once(t).chain(highlight) {
        if u.ambient_dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: u.ambient_dim(),
            });
        }
    }
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let square: Vec<RationalPoint> = [(0, 0), (1, 0), (1, 1), (0, 1)]
        .iter()
        .map(|&(a, b)| RationalPoint::from_fractions(&[(a, 1), (b, 1)]))
        .collect();
    shape(&mut out, &square, r##"fill="none" stroke="#bbbbbb" stroke-dasharray="4 3""##);
    for (k, h) in highlight.iter().enumerate() {
        let color = FILLS[k % FILLS.len()];
        for i in 0..h.len() {
            let style = format!(r#"fill="{color}" fill-opacity="0.35" stroke="{color}" stroke-width="3""#);
            shape(&mut out, &h.simplex_points(i), &style);
        }
    }
    for i in 0..t.len() {
        shape(&mut out, &t.simplex_points(i), r#"fill="none" stroke="black" stroke-width="1""#);
    }
    for v in t.vertices() {
        let (x, y) = xy(v);
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="2.5" fill="black"/>"#);
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-family="monospace" font-size="10">{}</text>"#,
            x + 4.0,
            y - 4.0,
            v.to_homogeneous()
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_drawing() {
        let svg = render_svg(&Triangulation::cube(2), &[]).unwrap();
        assert!(svg.starts_with("<?xml"));
        assert_eq!(svg.matches("<polygon").count(), 3);
        assert!(svg.contains("[1,1,1]"));
    }

    #[test]
    fn only_planar() {
        assert!(render_svg(&Triangulation::cube(1), &[]).is_err());
    }
}
