//! Exact geometric checks of straight-line embeddings.

use std::cmp::Ordering;

use num::Zero;
use thiserror::Error;

use crate::cpt::CptLabeling;
use crate::geom::{dot_sign, orientation, segments_intersect, twice_signed_area, Embedding, Orientation, Point, Rational};
use crate::plane_graph::{same_cycle, DartId, PlaneGraph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("vertex {0} has no incident edge")]
    IsolatedVertex(VertexId),
    #[error("coordinates around vertex {0} realize a different rotation")]
    FacesMismatch(VertexId),
    #[error("embedding has {got} points, graph has {expected} vertices")]
    SizeMismatch { got: usize, expected: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricReport {
    pub non_crossing: bool,
    /// The counter-clockwise order of edges at every vertex matches the graph.
    pub rotation_consistent: bool,
    pub outer_convex: bool,
    pub pointed: Vec<bool>,
    /// Convex (non-reflex) angles per face.
    pub face_convex_counts: Vec<usize>,
    /// Angles of exactly pi; classified small but flagged.
    pub straight_angles: Vec<DartId>,
    pub labeling: Option<CptLabeling>,
    pub pseudo_triangulation: bool,
    pub pointed_pseudo_triangulation: bool,
    pub nonpointed: Vec<VertexId>,
}

fn check_size(emb: &Embedding, g: &PlaneGraph) -> Result<(), VerifyError> {
    if emb.len() != g.n() {
        return Err(VerifyError::SizeMismatch { got: emb.len(), expected: g.n() });
    }
    Ok(())
}

/// Exact comparison of the directions `a - o` and `b - o` by polar angle in `[0, 2 pi)`.
pub(crate) fn polar_cmp(o: &Point, a: &Point, b: &Point) -> Ordering {
    let half = |p: &Point| {
        let dy = p.y() - o.y();
        if dy.is_zero() {
            usize::from(p.x() < o.x())
        } else {
            usize::from(dy < Rational::zero())
        }
    };
    half(a).cmp(&half(b)).then_with(|| match orientation(o, a, b) {
        Orientation::Left => Ordering::Less,
        Orientation::Right => Ordering::Greater,
        Orientation::Collinear => Ordering::Equal,
    })
}

/// Does the drawing around `v` realize its rotation, with no two edges overlapping?
pub fn rotation_matches(emb: &Embedding, g: &PlaneGraph, v: VertexId) -> bool {
    let o = &emb.points[v];
    let rot = g.rotation(v);
    if rot.iter().any(|&u| emb.points[u] == *o) {
        return false;
    }
    let mut sorted = rot.to_vec();
    sorted.sort_by(|&a, &b| polar_cmp(o, &emb.points[a], &emb.points[b]));
    if sorted.windows(2).any(|w| polar_cmp(o, &emb.points[w[0]], &emb.points[w[1]]) == Ordering::Equal) {
        return false;
    }
    same_cycle(&sorted, rot)
}

pub fn check_rotations(emb: &Embedding, g: &PlaneGraph) -> Result<(), VerifyError> {
    check_size(emb, g)?;
    match (0..g.n()).find(|&v| !rotation_matches(emb, g, v)) {
        Some(v) => Err(VerifyError::FacesMismatch(v)),
        None => Ok(()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum AngleKind {
    Convex,
    Straight,
    Reflex,
}

/// Classify the angle owned by dart `d`, assuming the rotation at its origin matches.
fn angle_kind(emb: &Embedding, g: &PlaneGraph, d: DartId) -> AngleKind {
    let a = g.angle(d);
    if g.degree(a.vertex) == 1 {
        return AngleKind::Reflex;
    }
    let (o, p, q) = (&emb.points[a.vertex], &emb.points[a.first], &emb.points[a.second]);
    match orientation(o, p, q) {
        Orientation::Left => AngleKind::Convex,
        Orientation::Right => AngleKind::Reflex,
        Orientation::Collinear => AngleKind::Straight,
    }
}

/// Some angle at `v` exceeds pi. Requires the drawing to realize the rotation at `v`.
pub fn is_pointed(emb: &Embedding, g: &PlaneGraph, v: VertexId) -> Result<bool, VerifyError> {
    check_size(emb, g)?;
    if g.degree(v) == 0 {
        return Err(VerifyError::IsolatedVertex(v));
    }
    if !rotation_matches(emb, g, v) {
        return Err(VerifyError::FacesMismatch(v));
    }
    Ok(g.darts_of(v).any(|d| angle_kind(emb, g, d) == AngleKind::Reflex))
}

/// No two edges share a point other than a common endpoint.
pub fn is_noncrossing(emb: &Embedding, g: &PlaneGraph) -> bool {
    if emb.len() != g.n() {
        return false;
    }
    let pts = &emb.points;
    let edges = g.edges();
    let xs: Vec<(f64, f64)> = edges
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (pts[u].to_f64()[0], pts[v].to_f64()[0]);
            (a.min(b), a.max(b))
        })
        .collect();
    if xs.iter().any(|&(lo, hi)| !lo.is_finite() || !hi.is_finite()) {
        return all_pairs_noncrossing(emb, g);
    }
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by(|&a, &b| xs[a].0.total_cmp(&xs[b].0));
    let scale = xs.iter().fold(1.0f64, |m, &(lo, hi)| m.max(lo.abs()).max(hi.abs()));
    let tol = 1e-9 * scale;
    for (i, &e) in order.iter().enumerate() {
        for &f in &order[i + 1..] {
            if xs[f].0 > xs[e].1 + tol {
                break;
            }
            if edges_cross(pts, edges[e], edges[f]) {
                return false;
            }
        }
    }
    true
}

fn all_pairs_noncrossing(emb: &Embedding, g: &PlaneGraph) -> bool {
    let edges = g.edges();
    (0..edges.len()).all(|i| (i + 1..edges.len()).all(|j| !edges_cross(&emb.points, edges[i], edges[j])))
}

fn edges_cross(pts: &[Point], e: (VertexId, VertexId), f: (VertexId, VertexId)) -> bool {
    let shared = [e.0, e.1].into_iter().find(|x| *x == f.0 || *x == f.1);
    match shared {
        None => segments_intersect(&pts[e.0], &pts[e.1], &pts[f.0], &pts[f.1]),
        Some(s) => {
            // adjacent edges only meet at s unless they overlap along one direction
            let a = if e.0 == s { e.1 } else { e.0 };
            let b = if f.0 == s { f.1 } else { f.0 };
            orientation(&pts[s], &pts[a], &pts[b]) == Orientation::Collinear
                && dot_sign(&pts[s], &pts[a], &pts[s], &pts[b]) == Ordering::Greater
        }
    }
}

/// Big exactly at the reflex angles of the drawing.
pub fn derive_labeling(emb: &Embedding, g: &PlaneGraph) -> Result<CptLabeling, VerifyError> {
    check_rotations(emb, g)?;
    let flags = (0..g.dart_count()).map(|d| angle_kind(emb, g, d) == AngleKind::Reflex).collect();
    Ok(CptLabeling::from_flags(flags))
}

/// The outer boundary is a strictly convex counter-clockwise polygon.
pub fn outer_face_convex(emb: &Embedding, g: &PlaneGraph) -> bool {
    let cycle = g.outer_cycle_ccw();
    let h = cycle.len();
    if h < 3 {
        return false;
    }
    let pts: Vec<Point> = cycle.iter().map(|&v| emb.points[v].clone()).collect();
    (0..h).all(|i| orientation(&pts[i], &pts[(i + 1) % h], &pts[(i + 2) % h]) == Orientation::Left)
        && twice_signed_area(&pts) > Rational::zero()
}

pub fn verify_embedding(emb: &Embedding, g: &PlaneGraph) -> GeometricReport {
    let sized = emb.len() == g.n();
    let rotation_consistent = sized && check_rotations(emb, g).is_ok();
    let non_crossing = sized && is_noncrossing(emb, g);
    let outer_convex = rotation_consistent && outer_face_convex(emb, g);
    if !rotation_consistent {
        return GeometricReport {
            non_crossing,
            rotation_consistent,
            outer_convex,
            pointed: vec![false; g.n()],
            face_convex_counts: Vec::new(),
            straight_angles: Vec::new(),
            labeling: None,
            pseudo_triangulation: false,
            pointed_pseudo_triangulation: false,
            nonpointed: (0..g.n()).collect(),
        };
    }
    let kinds: Vec<AngleKind> = (0..g.dart_count()).map(|d| angle_kind(emb, g, d)).collect();
    let straight_angles: Vec<DartId> = (0..kinds.len()).filter(|&d| kinds[d] == AngleKind::Straight).collect();
    let pointed: Vec<bool> = (0..g.n()).map(|v| g.darts_of(v).any(|d| kinds[d] == AngleKind::Reflex)).collect();
    let face_convex_counts: Vec<usize> = g
        .faces()
        .iter()
        .map(|f| f.darts().iter().filter(|&&d| kinds[d] != AngleKind::Reflex).count())
        .collect();
    let interior_ok = g.interior_faces().all(|f| face_convex_counts[f] == 3);
    let pseudo_triangulation = non_crossing && outer_convex && interior_ok && straight_angles.is_empty();
    let nonpointed: Vec<VertexId> = (0..g.n()).filter(|&v| !pointed[v]).collect();
    let labeling = CptLabeling::from_flags(kinds.iter().map(|&k| k == AngleKind::Reflex).collect());
    GeometricReport {
        non_crossing,
        rotation_consistent,
        outer_convex,
        pointed_pseudo_triangulation: pseudo_triangulation && nonpointed.is_empty(),
        pseudo_triangulation,
        pointed,
        face_convex_counts,
        straight_angles,
        labeling: Some(labeling),
        nonpointed,
    }
}
