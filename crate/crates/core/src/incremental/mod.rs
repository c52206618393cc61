//! Geometric Henneberg construction: replay a plane sequence and place each
//! new vertex inside its face so that every intermediate drawing is a
//! pointed pseudo-triangulation.

mod region;

pub use region::{
    feasible_region, placement_feasible, sees, tangency_region, FacePolygon, FeasibleRegion, Wedge,
};

use num::{BigRational, Zero};
use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use thiserror::Error;

use crate::geom::{orientation, round_dyadic, Embedding, Orientation, Point, Provenance};
use crate::henneberg::{apply_step, base_state, Base, HennebergSequence, StepKind};
use crate::plane_graph::{same_cycle, PlaneGraph, RotationSystem, VertexId};
use crate::verify::verify_embedding;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IncrementalError {
    #[error("step {step} inserts into the outer face")]
    SequenceNotInteriorOnly { step: usize },
    #[error("only sequences grown from an edge can be embedded incrementally")]
    UnsupportedBase,
    #[error("base triangle must be strictly counter-clockwise")]
    BadBaseTriangle,
    #[error("vertex {0} is not a simple corner of the face")]
    AnchorNotOnFace(VertexId),
    #[error("no feasible placement{}", step.map(|s| format!(" at step {s}")).unwrap_or_default())]
    NoPlacement { step: Option<usize> },
    #[error("drawing after step {step} is not a pointed pseudo-triangulation")]
    VerificationFailed { step: usize },
    #[error("step {step}: {reason}")]
    Henneberg { step: usize, reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IncrementalConfig {
    /// Seeds the random samples used when the preferred point fails.
    pub seed: u64,
    /// Random samples tried per step after the cell centroids.
    pub samples: u32,
}

impl Default for IncrementalConfig {
    fn default() -> Self {
        IncrementalConfig { seed: 0, samples: 64 }
    }
}

/// Largest dyadic precision tried when snapping a point.
const MAX_SNAP_BITS: u32 = 256;

fn face_polygon(points: &[Point], face: &[VertexId]) -> FacePolygon {
    FacePolygon { vertices: face.to_vec(), points: face.iter().map(|&v| points[v].clone()).collect() }
}

fn corner(face: &FacePolygon, v: VertexId) -> Result<usize, IncrementalError> {
    face.position(v).ok_or(IncrementalError::AnchorNotOnFace(v))
}

/// A short dyadic point near `p` that is still feasible, else `p` itself.
fn snap(face: &FacePolygon, anchors: &[usize], p: &Point) -> Point {
    let mut bits = 1;
    while bits <= MAX_SNAP_BITS {
        let q = Point::new(round_dyadic(p.x(), bits), round_dyadic(p.y(), bits));
        if placement_feasible(face, anchors, &q) {
            return q;
        }
        bits += 1;
    }
    p.clone()
}

fn random_point_in(cell: &[Point], rng: &mut SplitMix64) -> Point {
    let weights: Vec<i64> = cell.iter().map(|_| rng.random_range(1..=1024)).collect();
    let total: i64 = weights.iter().sum();
    let (mut x, mut y) = (BigRational::zero(), BigRational::zero());
    for (p, &w) in cell.iter().zip(&weights) {
        let w = BigRational::new(w.into(), total.into());
        x += p.x() * &w;
        y += p.y() * w;
    }
    Point::new(x, y)
}

/// Candidate placements in order of preference: the snapped centroid of every
/// cell, largest first, then `samples` seeded random points.
fn candidates(region: &FeasibleRegion, anchors: &[usize], samples: u32, seed: u64) -> Vec<Point> {
    let cells = region.cells_by_area();
    let mut out: Vec<Point> = cells
        .iter()
        .map(|c| snap(&region.face, anchors, &Point::centroid(c.iter()).expect("non-empty cell")))
        .collect();
    if cells.is_empty() {
        return out;
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    for _ in 0..samples {
        let cell = cells[rng.random_range(0..cells.len())];
        out.push(snap(&region.face, anchors, &random_point_in(cell, &mut rng)));
    }
    out
}

/// Points straddling the removed edge: its segment, pushed off to either side.
fn segment_seeds(face: &FacePolygon, anchors: &[usize], a: &Point, b: &Point) -> Vec<Point> {
    let [dx, dy] = [b.x() - a.x(), b.y() - a.y()];
    let mut out = Vec::new();
    for t in [(1, 2), (1, 3), (2, 3), (1, 4), (3, 4)] {
        let m = a.lerp(b, &BigRational::new(t.0.into(), t.1.into()));
        for k in 1..=48u32 {
            let eps = BigRational::new(1.into(), num::BigInt::from(1) << k);
            for s in [1, -1] {
                let s = BigRational::from_integer(s.into());
                let q = Point::new(m.x() - &dy * &eps * &s, m.y() + &dx * &eps * &s);
                if placement_feasible(face, anchors, &q) {
                    out.push(q);
                }
            }
        }
    }
    out
}

/// Points of `face` that see `anchor` along a tangent to the face boundary.
pub fn tangency_wedge(points: &[Point], face: &[VertexId], anchor: VertexId) -> Result<FeasibleRegion, IncrementalError> {
    let poly = face_polygon(points, face);
    let i = corner(&poly, anchor)?;
    Ok(tangency_region(&poly, i))
}

/// Pointed-feasible region for a new vertex joined to `neighbors` (in walk order).
pub fn pointed_feasible_region(
    points: &[Point],
    face: &[VertexId],
    neighbors: &[VertexId],
) -> Result<FeasibleRegion, IncrementalError> {
    let poly = face_polygon(points, face);
    let anchors = neighbors.iter().map(|&v| corner(&poly, v)).collect::<Result<Vec<_>, _>>()?;
    Ok(feasible_region(&poly, &anchors))
}

fn walk_order(poly: &FacePolygon, vs: &[VertexId]) -> Result<Vec<usize>, IncrementalError> {
    let mut anchors = vs.iter().map(|&v| corner(poly, v)).collect::<Result<Vec<_>, _>>()?;
    anchors.sort_unstable();
    Ok(anchors)
}

/// A point for a vertex-addition step joining `v1` and `v2` inside `face`.
pub fn place_henneberg1(
    points: &[Point],
    face: &[VertexId],
    v1: VertexId,
    v2: VertexId,
) -> Result<Point, IncrementalError> {
    let poly = face_polygon(points, face);
    let anchors = walk_order(&poly, &[v1, v2])?;
    let region = feasible_region(&poly, &anchors);
    candidates(&region, &anchors, 0, 0)
        .into_iter()
        .next()
        .ok_or(IncrementalError::NoPlacement { step: None })
}

/// A point for an edge split of `removed` with third neighbour `vk`, where
/// `face` is the face left after deleting the edge.
pub fn place_henneberg2(
    points: &[Point],
    face: &[VertexId],
    removed: (VertexId, VertexId),
    vk: VertexId,
) -> Result<Point, IncrementalError> {
    let poly = face_polygon(points, face);
    let anchors = walk_order(&poly, &[removed.0, removed.1, vk])?;
    let region = feasible_region(&poly, &anchors);
    candidates(&region, &anchors, 0, 0)
        .into_iter()
        .next()
        .or_else(|| segment_seeds(&poly, &anchors, &points[removed.0], &points[removed.1]).into_iter().next())
        .ok_or(IncrementalError::NoPlacement { step: None })
}

/// The drawing of the present vertices, relabelled to `0..k`, checked as a
/// pointed pseudo-triangulation with `2k - 3` edges.
fn prefix_is_ppt(rs: &RotationSystem, points: &[Point], outer: (VertexId, VertexId)) -> bool {
    let ids: Vec<VertexId> = rs.present_vertices().collect();
    let mut index = vec![usize::MAX; rs.universe()];
    for (i, &v) in ids.iter().enumerate() {
        index[v] = i;
    }
    let rot = ids.iter().map(|&v| rs.neighbors(v).iter().map(|&u| index[u]).collect()).collect();
    let Ok(g) = PlaneGraph::from_rotations(RotationSystem::from_rotations(rot), (index[outer.0], index[outer.1])) else {
        return false;
    };
    let emb = Embedding::new(ids.iter().map(|&v| points[v].clone()).collect(), Provenance::Henneberg);
    g.m() + 3 == 2 * g.n() && verify_embedding(&emb, &g).pointed_pseudo_triangulation
}

/// Realize `seq` step by step. `base` gives the corners of the first triangle,
/// counter-clockwise, starting at its smallest vertex id. The sequence must
/// start from an edge and make every later insertion into an interior face.
pub fn embed_incremental(
    seq: &HennebergSequence,
    base: &[Point; 3],
    config: &IncrementalConfig,
) -> Result<Embedding, IncrementalError> {
    let Base::Edge(..) = seq.base else {
        return Err(IncrementalError::UnsupportedBase);
    };
    if orientation(&base[0], &base[1], &base[2]) != Orientation::Left {
        return Err(IncrementalError::BadBaseTriangle);
    }
    if let Some(step) = seq.steps.iter().skip(1).position(|s| s.into_outer) {
        return Err(IncrementalError::SequenceNotInteriorOnly { step: step + 1 });
    }
    let Some(first) = seq.steps.first() else {
        return Err(IncrementalError::UnsupportedBase);
    };
    if first.kind != StepKind::I {
        return Err(IncrementalError::UnsupportedBase);
    }
    let (mut rs, _) = base_state(&seq.base, seq.n);
    apply_step(&mut rs, first).map_err(|reason| IncrementalError::Henneberg { step: 0, reason })?;

    let mut points = vec![Point::from_ints(0, 0); seq.n];
    let mut tri: Vec<VertexId> = rs.present_vertices().collect();
    tri.sort_unstable();
    // orient the triangle so that its interior face is traced counter-clockwise
    let interior = rs.face_walk(tri[0], tri[1]);
    let outer = rs.face_walk(first.outer.0, first.outer.1);
    if same_cycle(&interior, &outer) {
        tri.swap(1, 2);
    }
    for (v, p) in tri.iter().zip(base) {
        points[*v] = p.clone();
    }
    if !prefix_is_ppt(&rs, &points, first.outer) {
        return Err(IncrementalError::VerificationFailed { step: 0 });
    }

    for (i, step) in seq.steps.iter().enumerate().skip(1) {
        let poly = face_polygon(&points, &step.face);
        let mut anchors = Vec::with_capacity(step.neighbors.len());
        for (&u, &a) in step.neighbors.iter().zip(&step.anchors) {
            let k = poly.len();
            let pos = (0..k).find(|&j| poly.vertices[j] == u && poly.vertices[(j + 1) % k] == a);
            anchors.push(pos.ok_or(IncrementalError::AnchorNotOnFace(u))?);
        }
        let region = feasible_region(&poly, &anchors);
        let mut tries = candidates(&region, &anchors, config.samples, config.seed ^ (i as u64).wrapping_mul(0x9e37_79b9));
        if let (StepKind::II, Some((a, b))) = (step.kind, step.split_edge) {
            if tries.is_empty() {
                tries = segment_seeds(&poly, &anchors, &points[a], &points[b]);
            }
        }
        if tries.is_empty() {
            return Err(IncrementalError::NoPlacement { step: Some(i) });
        }
        apply_step(&mut rs, step).map_err(|reason| IncrementalError::Henneberg { step: i, reason })?;
        let placed = tries.into_iter().any(|p| {
            points[step.vertex] = p;
            prefix_is_ppt(&rs, &points, step.outer)
        });
        if !placed {
            return Err(IncrementalError::VerificationFailed { step: i });
        }
    }
    let present: Vec<VertexId> = rs.present_vertices().collect();
    if present.len() != seq.n {
        return Err(IncrementalError::Henneberg { step: seq.steps.len(), reason: "sequence leaves vertices unused".into() });
    }
    Ok(Embedding::new(points, Provenance::Henneberg))
}
