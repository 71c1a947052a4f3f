//! SVG drawings of plane graphs that carry coordinates.

use std::fmt::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::plane_graph::PlaneGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("graph has no coordinates to draw")]
    MissingCoordinates,
    #[error("render settings must be positive: {0}")]
    InvalidSpec(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RenderSpec {
    pub width: u32,
    pub height: u32,
    pub stroke_width: f64,
    pub vertex_radius: f64,
    /// Write each inner face's degree at its centroid.
    pub face_labels: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            width: 480,
            height: 480,
            stroke_width: 2.0,
            vertex_radius: 4.0,
            face_labels: true,
        }
    }
}

impl RenderSpec {
    fn validate(&self) -> Result<(), RenderError> {
        if self.width == 0 || self.height == 0 {
            return Err(RenderError::InvalidSpec("canvas size"));
        }
        if self.stroke_width.is_nan() || self.stroke_width <= 0.0 {
            return Err(RenderError::InvalidSpec("stroke width"));
        }
        if self.vertex_radius.is_nan() || self.vertex_radius <= 0.0 {
            return Err(RenderError::InvalidSpec("vertex radius"));
        }
        Ok(())
    }
}

/// Straight-line SVG 1.1 drawing. Inner faces are shaded, the exterior face
/// is left blank.
pub fn render_svg(graph: &PlaneGraph, spec: &RenderSpec) -> Result<String, RenderError> {
    spec.validate()?;
    let coords = graph.coordinates().ok_or(RenderError::MissingCoordinates)?;

    let (min_x, max_x) = bounds(coords.iter().map(|p| p.x));
    let (min_y, max_y) = bounds(coords.iter().map(|p| p.y));
    let margin = 2.0 * spec.vertex_radius + spec.stroke_width + 8.0;
    let (w, h) = (spec.width as f64, spec.height as f64);
    let span = ((max_x - min_x).max(max_y - min_y)).max(1) as f64;
    let scale = ((w - 2.0 * margin).min(h - 2.0 * margin) / span).max(f64::MIN_POSITIVE);
    let at = |v: usize| {
        let p = coords[v];
        (
            margin + (p.x - min_x) as f64 * scale,
            h - margin - (p.y - min_y) as f64 * scale,
        )
    };

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        spec.width, spec.height, spec.width, spec.height
    );
    let _ = writeln!(
        out,
        "<!-- y axis flipped: y-up graph coordinates drawn in the y-down SVG viewport -->"
    );

    let census = graph.face_census();
    let _ = writeln!(out, r##"<g fill="#dde8f3" stroke="none">"##);
    for (f, walk) in census.walks.iter().enumerate() {
        if f == census.outer {
            continue;
        }
        let pts: Vec<String> = walk
            .iter()
            .map(|&v| {
                let (x, y) = at(v);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(out, r#"<polygon points="{}"/>"#, pts.join(" "));
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(
        out,
        r##"<g stroke="#1f2d3d" stroke-width="{}" stroke-linecap="round">"##,
        spec.stroke_width
    );
    for (u, v) in graph.edges() {
        let ((x1, y1), (x2, y2)) = (at(u), at(v));
        let _ = writeln!(
            out,
            r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"/>"#
        );
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r##"<g fill="#c0392b">"##);
    for v in 0..graph.vertex_count() {
        let (x, y) = at(v);
        let _ = writeln!(
            out,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="{}"/>"#,
            spec.vertex_radius
        );
    }
    let _ = writeln!(out, "</g>");

    if spec.face_labels {
        let _ = writeln!(
            out,
            r##"<g font-family="sans-serif" font-size="12" text-anchor="middle" fill="#34495e">"##
        );
        for (f, walk) in census.walks.iter().enumerate() {
            if f == census.outer {
                continue;
            }
            let (x, y) = centroid(&walk.iter().map(|&v| at(v)).collect::<Vec<_>>());
            let _ = writeln!(
                out,
                r#"<text x="{x:.2}" y="{:.2}">{}</text>"#,
                y + 4.0,
                walk.len()
            );
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn bounds(values: impl Iterator<Item = i64>) -> (i64, i64) {
    values.fold((i64::MAX, i64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

/// Area centroid of a polygon, falling back to the vertex average when the
/// polygon is degenerate.
fn centroid(pts: &[(f64, f64)]) -> (f64, f64) {
    let k = pts.len();
    let (mut a, mut cx, mut cy) = (0.0, 0.0, 0.0);
    for i in 0..k {
        let (x0, y0) = pts[i];
        let (x1, y1) = pts[(i + 1) % k];
        let c = x0 * y1 - x1 * y0;
        a += c;
        cx += (x0 + x1) * c;
        cy += (y0 + y1) * c;
    }
    if a.abs() < 1e-9 {
        let n = k as f64;
        return (
            pts.iter().map(|p| p.0).sum::<f64>() / n,
            pts.iter().map(|p| p.1).sum::<f64>() / n,
        );
    }
    (cx / (3.0 * a), cy / (3.0 * a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angulator::{construct_combinatorial, synthesize_coordinates};
    use crate::geom::PointSet;

    fn count(svg: &str, needle: &str) -> usize {
        svg.matches(needle).count()
    }

    #[test]
    fn triangle() {
        let ps = PointSet::from_coords(&[(0, 0), (4, 0), (1, 3)]).unwrap();
        let g = PlaneGraph::build_geometric(&ps, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let svg = render_svg(&g, &RenderSpec::default()).unwrap();
        assert_eq!(count(&svg, "<line "), 3);
        assert_eq!(count(&svg, "<circle "), 3);
        assert_eq!(count(&svg, "<polygon "), 1);
    }

    #[test]
    fn k4_labels() {
        let ps = PointSet::from_coords(&[(0, 0), (6, 0), (3, 6), (3, 2)]).unwrap();
        let g = PlaneGraph::build_geometric(&ps, &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)])
            .unwrap();
        let svg = render_svg(&g, &RenderSpec::default()).unwrap();
        assert_eq!(count(&svg, "<line "), 6);
        assert_eq!(count(&svg, ">3</text>"), 3);
        let plain = render_svg(
            &g,
            &RenderSpec {
                face_labels: false,
                ..RenderSpec::default()
            },
        )
        .unwrap();
        assert_eq!(count(&plain, "<text"), 0);
    }

    #[test]
    fn constructed_pentagons() {
        let g = synthesize_coordinates(&construct_combinatorial(14, 5, 5).unwrap()).unwrap();
        let svg = render_svg(&g, &RenderSpec::default()).unwrap();
        assert_eq!(count(&svg, "<line "), 20);
        assert_eq!(count(&svg, ">5</text>"), 7);
        assert_eq!(svg, render_svg(&g, &RenderSpec::default()).unwrap());
    }

    #[test]
    fn needs_coordinates() {
        let g = construct_combinatorial(4, 4, 4).unwrap();
        assert_eq!(
            render_svg(&g, &RenderSpec::default()),
            Err(RenderError::MissingCoordinates)
        );
        let g = synthesize_coordinates(&g).unwrap();
        let bad = RenderSpec {
            width: 0,
            ..RenderSpec::default()
        };
        assert!(matches!(
            render_svg(&g, &bad),
            Err(RenderError::InvalidSpec(_))
        ));
    }
}
