//! SVG figures of sampled polymers.
//!
//! Planar polymers are drawn as circles with their tree edges. A 3D polymer
//! is drawn as two panels: the centres projected onto the x-axis, and the
//! yz-projection with its tree edges.

use std::fmt::Write as _;

use crate::sampler2d::Polymer2D;
use crate::sampler3d::Polymer3D;

#[derive(Clone, Debug, PartialEq)]
pub struct RenderOptions {
    /// Width of the drawing in pixels (per panel for 3D).
    pub width: f64,
    /// Blank border, as a fraction of the width.
    pub margin: f64,
    pub fill: String,
    pub stroke: String,
    pub edge_stroke: String,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self {
            width: 800.0,
            margin: 0.03,
            fill: "#9ecae1".into(),
            stroke: "#08519c".into(),
            edge_stroke: "#d94801".into(),
        }
    }
}

struct Frame {
    min: [f64; 2],
    scale: f64,
    offset: [f64; 2],
    size: [f64; 2],
}

impl Frame {
    /// Fit the box `[lo, hi]` into a panel `width` wide, keeping aspect.
    fn fit(lo: [f64; 2], hi: [f64; 2], width: f64, margin: f64) -> Self {
        let span = [(hi[0] - lo[0]).max(1e-300), (hi[1] - lo[1]).max(1e-300)];
        let inner = width * (1.0 - 2.0 * margin);
        let scale = inner / span[0].max(span[1]);
        let pad = width * margin;
        Frame {
            min: lo,
            scale,
            offset: [pad, pad],
            size: [width, span[1] * scale + 2.0 * pad],
        }
    }

    /// SVG coordinates (y pointing down).
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let height = self.size[1] - 2.0 * self.offset[1];
        (
            self.offset[0] + (x - self.min[0]) * self.scale,
            self.offset[1] + height - (y - self.min[1]) * self.scale,
        )
    }
}

fn header(out: &mut String, width: f64, height: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.3} {height:.3}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
}

fn edge_pairs(parents: &[Option<usize>]) -> impl Iterator<Item = (usize, usize)> + '_ {
    parents
        .iter()
        .enumerate()
        .filter_map(|(c, p)| p.map(|p| (p, c)))
}

/// Circles for every vertex and a segment for every tree edge. `G`-polymers
/// (no radii) get dots sized by the shortest constraint.
pub fn render_polymer_2d(p: &Polymer2D, opts: &RenderOptions) -> String {
    let n = p.n();
    let dot = p
        .graph
        .edges()
        .iter()
        .map(|e| e.length)
        .filter(|&l| l > 0.0)
        .fold(f64::INFINITY, f64::min);
    let dot = if dot.is_finite() { 0.25 * dot } else { 0.25 };
    let radius = |i: usize| p.radii.as_ref().map_or(dot, |r| r[i]);
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for (i, v) in p.positions.iter().enumerate() {
        let r = radius(i);
        lo = [lo[0].min(v.x - r), lo[1].min(v.y - r)];
        hi = [hi[0].max(v.x + r), hi[1].max(v.y + r)];
    }
    let frame = Frame::fit(lo, hi, opts.width, opts.margin);
    let mut out = String::new();
    header(&mut out, frame.size[0], frame.size[1]);
    let _ = writeln!(
        out,
        r#"<g class="disks" fill="{}" stroke="{}" stroke-width="0.5">"#,
        opts.fill, opts.stroke
    );
    for i in 0..n {
        let (x, y) = frame.map(p.positions[i].x, p.positions[i].y);
        let _ = writeln!(
            out,
            r#"<circle cx="{x:.3}" cy="{y:.3}" r="{:.3}"/>"#,
            radius(i) * frame.scale
        );
    }
    out.push_str("</g>\n");
    let _ = writeln!(
        out,
        r#"<g class="tree" stroke="{}" stroke-width="1">"#,
        opts.edge_stroke
    );
    for (a, b) in edge_pairs(&p.tree_parent) {
        let (x1, y1) = frame.map(p.positions[a].x, p.positions[a].y);
        let (x2, y2) = frame.map(p.positions[b].x, p.positions[b].y);
        let _ = writeln!(
            out,
            r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}

/// Two panels stacked vertically: x-projection marks on a line, then the
/// yz-projection (circles of diameter 1 and tree edges).
pub fn render_polymer_3d(p: &Polymer3D, opts: &RenderOptions) -> String {
    let xs: Vec<f64> = p.positions.iter().map(|v| v[0]).collect();
    let xmin = xs.iter().copied().fold(f64::INFINITY, f64::min) - 0.5;
    let xmax = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max) + 0.5;
    let strip = Frame::fit([xmin, -0.5], [xmax, 0.5], opts.width, opts.margin);
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for v in &p.positions {
        lo = [lo[0].min(v[1] - 0.5), lo[1].min(v[2] - 0.5)];
        hi = [hi[0].max(v[1] + 0.5), hi[1].max(v[2] + 0.5)];
    }
    let plane = Frame::fit(lo, hi, opts.width, opts.margin);
    let height = strip.size[1] + plane.size[1];
    let mut out = String::new();
    header(&mut out, opts.width, height);

    let _ = writeln!(
        out,
        r#"<g class="x-projection" fill="none" stroke="{}" stroke-width="0.5">"#,
        opts.stroke
    );
    let (ax0, ay) = strip.map(xmin, 0.0);
    let (ax1, _) = strip.map(xmax, 0.0);
    let _ = writeln!(
        out,
        r#"<line class="axis" x1="{ax0:.3}" y1="{ay:.3}" x2="{ax1:.3}" y2="{ay:.3}" stroke="black"/>"#
    );
    for &x in &xs {
        let (cx, cy) = strip.map(x, 0.0);
        let _ = writeln!(
            out,
            r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="{:.3}"/>"#,
            0.5 * strip.scale
        );
    }
    out.push_str("</g>\n");

    let _ = writeln!(
        out,
        r#"<g class="yz-projection" transform="translate(0 {:.3})">"#,
        strip.size[1]
    );
    let _ = writeln!(
        out,
        r#"<g fill="{}" fill-opacity="0.6" stroke="{}" stroke-width="0.5">"#,
        opts.fill, opts.stroke
    );
    for v in &p.positions {
        let (cx, cy) = plane.map(v[1], v[2]);
        let _ = writeln!(
            out,
            r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="{:.3}"/>"#,
            0.5 * plane.scale
        );
    }
    out.push_str("</g>\n");
    let _ = writeln!(
        out,
        r#"<g class="tree" stroke="{}" stroke-width="1">"#,
        opts.edge_stroke
    );
    for (a, b) in edge_pairs(&p.tree_parent) {
        let (x1, y1) = plane.map(p.positions[a][1], p.positions[a][2]);
        let (x2, y2) = plane.map(p.positions[b][1], p.positions[b][2]);
        let _ = writeln!(
            out,
            r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#
        );
    }
    out.push_str("</g>\n</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;
    use crate::rng::seeded;
    use crate::sampler2d::{sample_gpolymer, sample_polymer_2d};
    use crate::sampler3d::{sample_polymer_3d, BetaWeights};

    fn count(doc: &roxmltree::Document, tag: &str) -> usize {
        doc.descendants().filter(|n| n.has_tag_name(tag)).count()
    }

    #[test]
    fn single_disk_is_one_circle() {
        let p = sample_polymer_2d(&[1.0], &mut seeded(1)).unwrap();
        let svg = render_polymer_2d(&p, &RenderOptions::default());
        let doc = roxmltree::Document::parse(&svg).unwrap();
        assert_eq!(count(&doc, "circle"), 1);
        assert_eq!(count(&doc, "line"), 0);
    }

    #[test]
    fn planar_element_counts() {
        let mut rng = seeded(2);
        for n in [3, 12, 40] {
            let p = sample_polymer_2d(&vec![1.0; n], &mut rng).unwrap();
            let svg = render_polymer_2d(&p, &RenderOptions::default());
            let doc = roxmltree::Document::parse(&svg).unwrap();
            assert_eq!(count(&doc, "circle"), n);
            assert_eq!(count(&doc, "line"), n - 1);
        }
        let path = sample_gpolymer(&WeightedGraph::path(3, 1.0), &[0, 1, 2], &mut rng).unwrap();
        let doc_text = render_polymer_2d(&path, &RenderOptions::default());
        let doc = roxmltree::Document::parse(&doc_text).unwrap();
        assert_eq!((count(&doc, "circle"), count(&doc, "line")), (3, 2));
    }

    #[test]
    fn spatial_panels() {
        let p = sample_polymer_3d(10, &BetaWeights::Uniform, &mut seeded(3)).unwrap();
        let svg = render_polymer_3d(&p, &RenderOptions::default());
        let doc = roxmltree::Document::parse(&svg).unwrap();
        let panel = |class: &str| {
            doc.descendants()
                .find(|n| n.attribute("class") == Some(class))
                .expect("panel present")
        };
        let marks = |node: roxmltree::Node| {
            node.descendants()
                .filter(|n| n.has_tag_name("circle"))
                .count()
        };
        assert_eq!(marks(panel("x-projection")), 10);
        assert_eq!(marks(panel("yz-projection")), 10);
        let tree = panel("yz-projection")
            .descendants()
            .filter(|n| n.has_tag_name("line"))
            .count();
        assert_eq!(tree, 9);
    }
}
