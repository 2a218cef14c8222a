use std::fmt::Write;

use simple_drawings::drawing::GoodDrawing;
use simple_drawings::geometry::{
    rational_to_f64, segment_crossing, PointConfiguration, Rational, RationalPoint, SegmentCrossing,
};
use simple_drawings::planarizer::{build_plane_map, NodeLabel};

use crate::CliError;

const CANVAS: f64 = 800.0;
const MARGIN: f64 = 24.0;

struct Viewport {
    min_x: f64,
    max_y: f64,
    scale: f64,
    width: f64,
    height: f64,
}

impl Viewport {
    fn fit(points: &[RationalPoint]) -> Self {
        let min = |f: fn(&RationalPoint) -> &Rational| points.iter().map(f).min().cloned();
        let max = |f: fn(&RationalPoint) -> &Rational| points.iter().map(f).max().cloned();
        let to_f = |r: Option<Rational>| rational_to_f64(&r.unwrap_or_default());
        let (min_x, max_x) = (to_f(min(|p| &p.x)), to_f(max(|p| &p.x)));
        let (min_y, max_y) = (to_f(min(|p| &p.y)), to_f(max(|p| &p.y)));
        let span = (max_x - min_x).max(max_y - min_y).max(f64::MIN_POSITIVE);
        let scale = (CANVAS - 2.0 * MARGIN) / span;
        Self {
            min_x,
            max_y,
            scale,
            width: (max_x - min_x) * scale + 2.0 * MARGIN,
            height: (max_y - min_y) * scale + 2.0 * MARGIN,
        }
    }

    fn map(&self, p: &RationalPoint) -> (f64, f64) {
        let (x, y) = p.to_f64();
        (
            MARGIN + (x - self.min_x) * self.scale,
            MARGIN + (self.max_y - y) * self.scale,
        )
    }
}

/// SVG of a straight-line drawing: edges, vertices, and a marker at every
/// crossing. Bounded faces are shaded by id when `shade_faces` is set.
pub fn render_svg(
    drawing: &GoodDrawing,
    cfg: &PointConfiguration,
    shade_faces: bool,
) -> Result<String, CliError> {
    if cfg.n() != drawing.n() {
        return Err(CliError::Invalid(format!(
            "point configuration has {} points, drawing has {} vertices",
            cfg.n(),
            drawing.n()
        )));
    }
    let mut crossing_points = Vec::with_capacity(drawing.crossing_count());
    for (id, c) in drawing.crossings().iter().enumerate() {
        let [e, f] = c.edges();
        match segment_crossing(
            cfg.point(e.lo()),
            cfg.point(e.hi()),
            cfg.point(f.lo()),
            cfg.point(f.hi()),
        ) {
            SegmentCrossing::InteriorCrossing(p) => crossing_points.push(p),
            _ => {
                return Err(CliError::Invalid(format!(
                    "crossing {id} of {e} and {f} does not match the point configuration"
                )))
            }
        }
    }
    let view = Viewport::fit(cfg.points());

    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.2} {h:.2}">"#,
        w = view.width,
        h = view.height
    )
    .unwrap();
    writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();

    if shade_faces {
        let map = build_plane_map(drawing).map_err(|e| CliError::Invalid(e.to_string()))?;
        let node_point = |node: usize| match map.node_label(node) {
            NodeLabel::Vertex(v) => cfg.point(v).clone(),
            NodeLabel::Crossing(c) => crossing_points[c].clone(),
        };
        for face in map.faces() {
            let pts: Vec<RationalPoint> = face
                .boundary
                .iter()
                .map(|&d| node_point(map.dart(d).node))
                .collect();
            // Faces lie left of their walk, so only bounded faces turn
            // counter-clockwise.
            let mut area = Rational::default();
            for i in 0..pts.len() {
                let (a, b) = (&pts[i], &pts[(i + 1) % pts.len()]);
                area += &a.x * &b.y - &b.x * &a.y;
            }
            if area <= Rational::default() {
                continue;
            }
            let coords: Vec<String> = pts
                .iter()
                .map(|p| {
                    let (x, y) = view.map(p);
                    format!("{x:.2},{y:.2}")
                })
                .collect();
            let hue = (face.id as f64 * 137.508) % 360.0;
            writeln!(
                svg,
                r#"<polygon class="face" data-face="{}" points="{}" fill="hsl({hue:.1},60%,85%)" stroke="none"/>"#,
                face.id,
                coords.join(" ")
            )
            .unwrap();
        }
    }

    for e in drawing.edges() {
        let (x1, y1) = view.map(cfg.point(e.lo()));
        let (x2, y2) = view.map(cfg.point(e.hi()));
        writeln!(
            svg,
            r#"<line class="edge" data-edge="{e}" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="black" stroke-width="1.5"/>"#
        )
        .unwrap();
    }
    for p in &crossing_points {
        let (x, y) = view.map(p);
        writeln!(
            svg,
            r#"<circle class="crossing" cx="{x:.2}" cy="{y:.2}" r="3" fill="crimson"/>"#
        )
        .unwrap();
    }
    for v in 1..=drawing.n() {
        let (x, y) = view.map(cfg.point(v));
        writeln!(
            svg,
            r#"<circle class="vertex" cx="{x:.2}" cy="{y:.2}" r="6" fill="steelblue"/>"#
        )
        .unwrap();
        writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" font-size="12" font-family="sans-serif">{v}</text>"#,
            x + 8.0,
            y - 8.0
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
