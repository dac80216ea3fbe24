//! Static SVG plots of bodies, polygon sets and normal vectors.

use std::fmt::Write as _;

use aniso_core::{Body, Point, Polygons};

const SIZE: f64 = 480.0;
const PAD: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Body,
    Set,
    Symmetral,
}

impl Style {
    fn attrs(self) -> &'static str {
        match self {
            Style::Body => r##"fill="#dbe8f6" stroke="#1f4e79" stroke-width="1.5""##,
            Style::Set => r##"fill="#f6e3d4" fill-opacity="0.7" stroke="#8a3b12" stroke-width="1.5""##,
            Style::Symmetral => r##"fill="none" stroke="#2e7d32" stroke-width="1.5" stroke-dasharray="6 4""##,
        }
    }
}

#[derive(Debug, Default)]
pub struct Plot {
    loops: Vec<(Vec<Point>, Style)>,
    arrows: Vec<(Point, Point, &'static str)>,
    labels: Vec<(Point, String)>,
}

/// Boundary polyline of a body; ellipses are sampled at 256 points.
pub fn body_outline(k: &Body) -> Vec<Point> {
    match k {
        Body::Polygon(p) => p.vertices().to_vec(),
        Body::Ellipse(e) => (0..256)
            .map(|i| {
                let t = std::f64::consts::TAU * i as f64 / 256.0;
                Point::new(e.a * t.cos(), e.b * t.sin())
            })
            .collect(),
    }
}

impl Plot {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn body(&mut self, k: &Body, style: Style) -> &mut Self {
        self.loops.push((body_outline(k), style));
        self
    }

    pub fn outline(&mut self, points: Vec<Point>, style: Style) -> &mut Self {
        self.loops.push((points, style));
        self
    }

    pub fn set(&mut self, e: &Polygons, style: Style) -> &mut Self {
        for l in e.loops() {
            self.loops.push((l.clone(), style));
        }
        self
    }

    pub fn arrow(&mut self, from: Point, dir: Point, color: &'static str) -> &mut Self {
        self.arrows.push((from, from + dir, color));
        self
    }

    pub fn label(&mut self, at: Point, text: impl Into<String>) -> &mut Self {
        self.labels.push((at, text.into()));
        self
    }

    fn bounds(&self) -> (Point, Point) {
        let pts = self
            .loops
            .iter()
            .flat_map(|(l, _)| l.iter().copied())
            .chain(self.arrows.iter().flat_map(|&(a, b, _)| [a, b]))
            .chain(self.labels.iter().map(|(p, _)| *p));
        let (mut lo, mut hi) =
            (Point::new(f64::INFINITY, f64::INFINITY), Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
        for p in pts {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        if !lo.is_finite() {
            return (Point::new(-1.0, -1.0), Point::new(1.0, 1.0));
        }
        (lo, hi)
    }

    pub fn render(&self) -> String {
        let (lo, hi) = self.bounds();
        let span = (hi.x - lo.x).max(hi.y - lo.y).max(1e-9) * (1.0 + 2.0 * PAD);
        let cx = (lo.x + hi.x) / 2.0;
        let cy = (lo.y + hi.y) / 2.0;
        let map = |p: Point| ((p.x - cx) / span * SIZE + SIZE / 2.0, (cy - p.y) / span * SIZE + SIZE / 2.0);

        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
        );
        let _ = writeln!(
            out,
            r##"<defs><marker id="tip" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="context-stroke"/></marker></defs>"##
        );
        let (ox, oy) = map(Point::zero());
        let _ = writeln!(
            out,
            r##"<g stroke="#bbbbbb" stroke-width="0.5"><line x1="0" y1="{oy:.2}" x2="{SIZE}" y2="{oy:.2}"/><line x1="{ox:.2}" y1="0" x2="{ox:.2}" y2="{SIZE}"/></g>"##
        );
        for (l, style) in &self.loops {
            let pts: Vec<String> = l
                .iter()
                .map(|&p| {
                    let (x, y) = map(p);
                    format!("{x:.2},{y:.2}")
                })
                .collect();
            let _ = writeln!(out, r#"<polygon points="{}" {}/>"#, pts.join(" "), style.attrs());
        }
        for &(a, b, color) in &self.arrows {
            let ((x1, y1), (x2, y2)) = (map(a), map(b));
            let _ = writeln!(
                out,
                r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{color}" stroke-width="1.5" marker-end="url(#tip)"/>"#
            );
        }
        for (p, text) in &self.labels {
            let (x, y) = map(*p);
            let _ =
                writeln!(out, r#"<text x="{x:.2}" y="{y:.2}" font-family="sans-serif" font-size="12">{text}</text>"#);
        }
        out.push_str("</svg>\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_every_element() {
        let mut plot = Plot::new();
        plot.body(&Body::diamond(1.0), Style::Body)
            .arrow(Point::new(0.5, 0.5), Point::new(0.3, 0.3), "red")
            .label(Point::new(0.0, 1.0), "K");
        let svg = plot.render();
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert_eq!(svg.matches("<line").count(), 3);
        assert!(svg.contains(">K</text>"));
        assert_eq!(body_outline(&Body::ellipse(1.0, 2.0).unwrap()).len(), 256);
    }
}
