//! SVG drawings of embedded graphs, optionally with their angle labels.

use std::fmt::Write;

use crate::cpt::CptLabeling;
use crate::geom::Embedding;
use crate::plane_graph::PlaneGraph;

fn fmt(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// Edges as lines, vertices as circles. With a labeling, every big angle
/// gets an arc and every small angle a dot. The y axis points up in the
/// drawing; the view box has a 5% margin.
pub fn render_svg(emb: &Embedding, g: &PlaneGraph, labeling: Option<&CptLabeling>) -> String {
    let pts: Vec<[f64; 2]> = emb.to_f64().into_iter().map(|[x, y]| [x, -y]).collect();
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in &pts {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    if pts.is_empty() {
        (lo, hi) = ([0.0; 2], [1.0; 2]);
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
    let margin = 0.05 * span;
    let (w, h) = (hi[0] - lo[0] + 2.0 * margin, hi[1] - lo[1] + 2.0 * margin);
    let stroke = span / 400.0;
    let dot = span / 120.0;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        fmt(lo[0] - margin),
        fmt(lo[1] - margin),
        fmt(w),
        fmt(h)
    );
    let _ = writeln!(out, r#"<g class="edges" stroke="black" stroke-width="{}">"#, fmt(stroke));
    for &(u, v) in g.edges() {
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            fmt(pts[u][0]),
            fmt(pts[u][1]),
            fmt(pts[v][0]),
            fmt(pts[v][1])
        );
    }
    out.push_str("</g>\n");
    if let Some(lab) = labeling {
        let _ = writeln!(out, r#"<g class="angles" fill="none" stroke="crimson" stroke-width="{}">"#, fmt(stroke));
        for a in g.angles() {
            let o = pts[a.vertex];
            let shortest = g
                .rotation(a.vertex)
                .iter()
                .map(|&u| (pts[u][0] - o[0]).hypot(pts[u][1] - o[1]))
                .fold(f64::INFINITY, f64::min);
            let r = 0.2 * shortest;
            // math angles, y up
            let dir = |u: usize| (o[1] - pts[u][1]).atan2(pts[u][0] - o[0]);
            let (t0, mut t1) = (dir(a.first), dir(a.second));
            if t1 <= t0 {
                t1 += std::f64::consts::TAU;
            }
            let at = |t: f64, r: f64| [o[0] + r * t.cos(), o[1] - r * t.sin()];
            if lab.is_big(a.dart) {
                let (s, e) = (at(t0, r), at(t1, r));
                let large = u8::from(t1 - t0 > std::f64::consts::PI);
                let _ = writeln!(
                    out,
                    r#"<path class="big" d="M {} {} A {} {} 0 {} 0 {} {}"/>"#,
                    fmt(s[0]),
                    fmt(s[1]),
                    fmt(r),
                    fmt(r),
                    large,
                    fmt(e[0]),
                    fmt(e[1])
                );
            } else {
                let m = at(0.5 * (t0 + t1), 0.6 * r);
                let _ = writeln!(
                    out,
                    r#"<circle class="small" cx="{}" cy="{}" r="{}" fill="black" stroke="none"/>"#,
                    fmt(m[0]),
                    fmt(m[1]),
                    fmt(dot / 2.0)
                );
            }
        }
        out.push_str("</g>\n");
    }
    out.push_str(r#"<g class="vertices" fill="white" stroke="black">"#);
    out.push('\n');
    for (v, p) in pts.iter().enumerate() {
        let _ = writeln!(
            out,
            r#"<circle class="vertex" id="v{v}" cx="{}" cy="{}" r="{}" stroke-width="{}"/>"#,
            fmt(p[0]),
            fmt(p[1]),
            fmt(dot),
            fmt(stroke)
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpt::assign_cpt;
    use crate::geom::{Point, Provenance};
    use crate::plane_graph::fixtures::*;

    fn worked() -> (PlaneGraph, Embedding) {
        let pts = [(0, 0), (4, 0), (2, 3), (2, 1)].iter().map(|&(x, y)| Point::from_ints(x, y)).collect();
        (four_vertex_laman(), Embedding::new(pts, Provenance::External))
    }

    #[test]
    fn plain_drawing_counts() {
        let (g, e) = worked();
        let svg = render_svg(&e, &g, None);
        assert_eq!(svg.matches("<circle").count(), 4);
        assert_eq!(svg.matches("<line").count(), 5);
        assert!(!svg.contains("class=\"big\""));
        assert!(svg.contains(r#"viewBox="-0.200000 -3.200000 4.400000 3.400000""#), "{svg}");
    }

    #[test]
    fn one_arc_per_pointed_vertex() {
        let (g, e) = worked();
        let lab = assign_cpt(&g, None).unwrap();
        let svg = render_svg(&e, &g, Some(&lab));
        assert_eq!(svg.matches("class=\"big\"").count(), 4);
        assert_eq!(svg.matches("class=\"small\"").count(), g.dart_count() - 4);
        assert_eq!(svg.matches("class=\"vertex\"").count(), 4);
        // the reflex arc at vertex 3 is the long way round
        assert!(svg.lines().any(|l| l.contains("class=\"big\"") && l.contains(" 0 1 0 ")));
        assert_eq!(svg, render_svg(&e, &g, Some(&lab)));
    }
}
