//! Minimal SVG 1.1 writer for orbit scatters and the quotient curve.
//!
//! Output is a pure function of the scene, so identical inputs give
//! identical bytes.

use std::fmt::Write as _;

use crate::bounds::{t_max, THEOREM2_BOUND};
use crate::complex::Complex64;
use crate::landmarks::circles;

/// Affine map from a data window to pixel coordinates, y pointing down.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub width: f64,
    pub height: f64,
}

impl Viewport {
    /// The window `[0, 0.55] × [0, 0.9]` around Σ at 1000 px per unit.
    pub fn sigma() -> Self {
        Self {
            x_min: 0.0,
            x_max: 0.55,
            y_min: 0.0,
            y_max: 0.9,
            width: 550.0,
            height: 900.0,
        }
    }

    pub fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let px = (x - self.x_min) / (self.x_max - self.x_min) * self.width;
        let py = (self.y_max - y) / (self.y_max - self.y_min) * self.height;
        (px, py)
    }

    fn scale_x(&self) -> f64 {
        self.width / (self.x_max - self.x_min)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Element {
    /// Point markers of the given pixel radius.
    Points {
        points: Vec<(f64, f64)>,
        radius: f64,
    },
    /// Circle in data coordinates; radius in data units along x.
    Circle {
        center: (f64, f64),
        radius: f64,
        stroke: &'static str,
    },
    Polyline {
        points: Vec<(f64, f64)>,
        stroke: &'static str,
        dashed: bool,
    },
    Text {
        at: (f64, f64),
        text: String,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvgScene {
    pub viewport: Viewport,
    pub layers: Vec<Element>,
}

fn px(v: f64) -> String {
    format!("{v:.3}")
}

impl SvgScene {
    pub fn new(viewport: Viewport) -> Self {
        Self {
            viewport,
            layers: Vec::new(),
        }
    }

    pub fn push(&mut self, e: Element) -> &mut Self {
        self.layers.push(e);
        self
    }

    pub fn render(&self) -> String {
        let vp = &self.viewport;
        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
            w = px(vp.width),
            h = px(vp.height)
        );
        let _ = writeln!(
            out,
            r#"<rect x="0" y="0" width="{}" height="{}" fill="white"/>"#,
            px(vp.width),
            px(vp.height)
        );
        for layer in &self.layers {
            match layer {
                Element::Points { points, radius } => {
                    let _ = writeln!(out, r#"<g fill="black" stroke="none">"#);
                    for &(x, y) in points {
                        let (cx, cy) = vp.map(x, y);
                        let _ = writeln!(
                            out,
                            r#"<circle class="pt" cx="{}" cy="{}" r="{}"/>"#,
                            px(cx),
                            px(cy),
                            px(*radius)
                        );
                    }
                    let _ = writeln!(out, "</g>");
                }
                Element::Circle {
                    center,
                    radius,
                    stroke,
                } => {
                    let (cx, cy) = vp.map(center.0, center.1);
                    let _ = writeln!(
                        out,
                        r#"<circle class="ref" cx="{}" cy="{}" r="{}" fill="none" stroke="{stroke}" stroke-width="1"/>"#,
                        px(cx),
                        px(cy),
                        px(radius * vp.scale_x())
                    );
                }
                Element::Polyline {
                    points,
                    stroke,
                    dashed,
                } => {
                    let coords: Vec<String> = points
                        .iter()
                        .map(|&(x, y)| {
                            let (a, b) = vp.map(x, y);
                            format!("{},{}", px(a), px(b))
                        })
                        .collect();
                    let dash = if *dashed {
                        r#" stroke-dasharray="4 3""#
                    } else {
                        ""
                    };
                    let _ = writeln!(
                        out,
                        r#"<polyline points="{}" fill="none" stroke="{stroke}" stroke-width="1"{dash}/>"#,
                        coords.join(" ")
                    );
                }
                Element::Text { at, text } => {
                    let (x, y) = vp.map(at.0, at.1);
                    let _ = writeln!(
                        out,
                        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12">{}</text>"#,
                        px(x),
                        px(y),
                        escape(text)
                    );
                }
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Boundary of Σ: real segment, the line `Re z = 1/2`, and the arc
/// `|z - 1| = 1` back to the origin.
fn sigma_boundary() -> Vec<(f64, f64)> {
    let mut pts = vec![(0.0, 0.0), (0.5, 0.0), (0.5, 3f64.sqrt() / 2.0)];
    let n = 200;
    // arc from angle 2π/3 (at z_eq) to π (at the origin) about 1
    for k in 0..=n {
        let a =
            2.0 * std::f64::consts::PI / 3.0 + (std::f64::consts::PI / 3.0) * k as f64 / n as f64;
        pts.push((1.0 + a.cos(), a.sin()));
    }
    pts
}

/// Orbit scatter on Σ with the boundary and `C1, C2, C3` overlaid.
pub fn orbit_scatter(points: &[Complex64]) -> SvgScene {
    let mut scene = SvgScene::new(Viewport::sigma());
    scene.push(Element::Polyline {
        points: sigma_boundary(),
        stroke: "gray",
        dashed: false,
    });
    for c in circles() {
        let e = c.to_euclidean();
        scene.push(Element::Circle {
            center: (e.center.re, e.center.im),
            radius: e.radius,
            stroke: "red",
        });
    }
    scene.push(Element::Points {
        points: points.iter().map(|z| (z.re, z.im)).collect(),
        radius: 0.5,
    });
    scene
}

/// Quotient ratio against `t`, with the reference bound as a dashed line.
pub fn quotient_plot(samples: &[(f64, f64)]) -> SvgScene {
    let t_hi = t_max().max(samples.iter().map(|s| s.0).fold(0.0, f64::max));
    let lo = samples
        .iter()
        .map(|s| s.1)
        .fold(THEOREM2_BOUND, f64::min)
        .min(2.0);
    let vp = Viewport {
        x_min: 0.0,
        x_max: t_hi * 1.05,
        y_min: lo - 0.02,
        y_max: THEOREM2_BOUND + 0.02,
        width: 640.0,
        height: 400.0,
    };
    let mut scene = SvgScene::new(vp);
    scene.push(Element::Polyline {
        points: vec![(0.0, THEOREM2_BOUND), (vp.x_max, THEOREM2_BOUND)],
        stroke: "red",
        dashed: true,
    });
    scene.push(Element::Text {
        at: (0.01, THEOREM2_BOUND + 0.005),
        text: format!("{THEOREM2_BOUND}"),
    });
    scene.push(Element::Polyline {
        points: samples.to_vec(),
        stroke: "black",
        dashed: false,
    });
    scene
}
