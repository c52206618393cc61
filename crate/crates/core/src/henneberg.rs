//! Plane Henneberg constructions: reverse reduction, forward replay and the
//! outer-triangle augmentation.
//!
//! A step inserts vertex `v` into one face of the current plane graph. For
//! kind II the split edge is removed first and `v` goes into the merged face.
//! Each neighbour `u` of `v` records an anchor: `v` is inserted into the
//! rotation of `u` right after the anchor, which is the first edge of the
//! face angle at `u` that receives the new edge.

use serde::Serialize;
use thiserror::Error;

use crate::plane_graph::{same_cycle, GraphError, PlaneGraph, RotationSystem, VertexId};
use crate::rigidity::{self, IndependenceTracker, RigidityClass};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HennebergError {
    #[error("graph is not Laman")]
    NotLaman,
    #[error("graph is not Laman-plus-one")]
    NotLamanPlusOne,
    #[error("invalid prescription: {0}")]
    PrescriptionInvalid(String),
    #[error("step {step}: {reason}")]
    StepInconsistent { step: usize, reason: String },
    #[error("outer face has degree {0}, need at least 3")]
    OuterFaceTooSmall(usize),
    #[error("no reducible vertex found with {0} vertices left")]
    ReductionStuck(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum StepKind {
    I,
    II,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HennebergStep {
    pub kind: StepKind,
    pub vertex: VertexId,
    /// Neighbours of the new vertex in counter-clockwise order.
    pub neighbors: Vec<VertexId>,
    /// For each neighbour, the vertex after which the new one enters its rotation.
    pub anchors: Vec<VertexId>,
    pub split_edge: Option<(VertexId, VertexId)>,
    /// Facial walk receiving the new vertex (the merged face for kind II).
    pub face: Vec<VertexId>,
    /// Whether that face is the outer face.
    pub into_outer: bool,
    /// A dart whose left face is the outer face after the step.
    pub outer: (VertexId, VertexId),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Base {
    Edge(VertexId, VertexId),
    K4 { vertices: [VertexId; 4], rotations: [[VertexId; 3]; 4], outer: (VertexId, VertexId) },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HennebergSequence {
    /// Size of the vertex universe; the final graph uses ids `0..n`.
    pub n: usize,
    pub base: Base,
    pub steps: Vec<HennebergStep>,
}

impl HennebergSequence {
    pub fn is_plus_one(&self) -> bool {
        matches!(self.base, Base::K4 { .. })
    }

    pub fn count(&self, kind: StepKind) -> usize {
        self.steps.iter().filter(|s| s.kind == kind).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Prescription {
    None,
    /// These two vertices form the base edge.
    Pair(VertexId, VertexId),
    /// These three mutually adjacent vertices are the last to be removed.
    Triangle(VertexId, VertexId, VertexId),
}

pub(crate) fn base_state(base: &Base, n: usize) -> (RotationSystem, (VertexId, VertexId)) {
    let mut rs = RotationSystem::empty(n);
    match *base {
        Base::Edge(a, b) => {
            rs.add_vertex(a, vec![b]);
            rs.add_vertex(b, vec![a]);
            (rs, (a, b))
        }
        Base::K4 { vertices, rotations, outer } => {
            for i in 0..4 {
                rs.add_vertex(vertices[i], rotations[i].to_vec());
            }
            (rs, outer)
        }
    }
}

/// Apply one forward step to `rs`, checking local consistency.
pub fn apply_step(rs: &mut RotationSystem, step: &HennebergStep) -> Result<(), String> {
    let v = step.vertex;
    if v >= rs.universe() {
        return Err(format!("vertex {v} outside universe"));
    }
    if rs.is_present(v) {
        return Err(format!("vertex {v} already present"));
    }
    let expected = match step.kind {
        StepKind::I => 2,
        StepKind::II => 3,
    };
    if step.neighbors.len() != expected || step.anchors.len() != expected {
        return Err(format!("kind {:?} needs {expected} neighbours", step.kind));
    }
    let mut sorted = step.neighbors.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != expected {
        return Err("repeated neighbour".into());
    }
    match (step.kind, step.split_edge) {
        (StepKind::I, None) => {}
        (StepKind::II, Some((a, b))) => {
            if !rs.is_present(a) || !rs.is_present(b) || !rs.has_edge(a, b) {
                return Err(format!("split edge {a}-{b} absent"));
            }
            if !step.neighbors.contains(&a) || !step.neighbors.contains(&b) {
                return Err("split edge endpoints must be neighbours".into());
            }
            rs.remove_neighbor(a, b);
            rs.remove_neighbor(b, a);
        }
        _ => return Err("split edge does not match step kind".into()),
    }
    for (&u, &anchor) in step.neighbors.iter().zip(&step.anchors) {
        if !rs.is_present(u) || !rs.has_edge(u, anchor) {
            return Err(format!("anchor {anchor} is not a neighbour of {u}"));
        }
    }
    let face = rs.face_walk(step.neighbors[0], step.anchors[0]);
    if !same_cycle(&face, &step.face) {
        return Err("recorded face does not match".into());
    }
    // every attachment angle must lie on that face, in rotation order
    let mut positions = Vec::with_capacity(expected);
    for (&u, &anchor) in step.neighbors.iter().zip(&step.anchors) {
        let pos = (0..face.len()).find(|&i| face[i] == u && face[(i + 1) % face.len()] == anchor);
        match pos {
            Some(p) => positions.push(p),
            None => return Err(format!("angle at {u} after {anchor} is not on the face")),
        }
    }
    let rotated: Vec<usize> = positions.iter().map(|&p| (p + face.len() - positions[0]) % face.len()).collect();
    if rotated.windows(2).any(|w| w[0] >= w[1]) {
        return Err("neighbour order disagrees with the face walk".into());
    }
    for (&u, &anchor) in step.neighbors.iter().zip(&step.anchors) {
        rs.insert_after(u, anchor, v);
    }
    rs.add_vertex(v, step.neighbors.clone());
    if !rs.has_edge(step.outer.0, step.outer.1) {
        return Err("outer dart absent".into());
    }
    Ok(())
}

/// Insert a fresh vertex `v` into the face with walk `walk`, joined to the
/// walk positions `positions` (strictly increasing). Returns the
/// counter-clockwise neighbours and the anchors.
pub fn insert_into_face(
    rs: &mut RotationSystem,
    v: VertexId,
    walk: &[VertexId],
    positions: &[usize],
) -> (Vec<VertexId>, Vec<VertexId>) {
    let neighbors: Vec<VertexId> = positions.iter().map(|&p| walk[p]).collect();
    let anchors: Vec<VertexId> = positions.iter().map(|&p| walk[(p + 1) % walk.len()]).collect();
    for (&u, &a) in neighbors.iter().zip(&anchors) {
        rs.insert_after(u, a, v);
    }
    rs.add_vertex(v, neighbors.clone());
    (neighbors, anchors)
}

/// Replay a sequence, validating planarity and counts after every step.
pub fn replay(seq: &HennebergSequence) -> Result<PlaneGraph, HennebergError> {
    replay_with(seq, |_, _| {})
}

/// Replay, calling `visit(step_index, state)` after the base (index `None`)
/// and after every step.
pub fn replay_with(
    seq: &HennebergSequence,
    mut visit: impl FnMut(Option<usize>, &RotationSystem),
) -> Result<PlaneGraph, HennebergError> {
    let bad = |step: usize, reason: String| HennebergError::StepInconsistent { step, reason };
    let (mut rs, mut outer) = base_state(&seq.base, seq.n);
    let plus_one = seq.is_plus_one();
    let mut tracker = IndependenceTracker::new(seq.n);
    match &seq.base {
        Base::Edge(a, b) => {
            if a == b || *a >= seq.n || *b >= seq.n {
                return Err(bad(0, "bad base edge".into()));
            }
            tracker.try_insert(*a, *b);
        }
        Base::K4 { .. } => {
            if !rs.is_plane() || rs.edge_count() != 6 {
                return Err(bad(0, "base is not a plane K4".into()));
            }
        }
    }
    visit(None, &rs);
    for (i, step) in seq.steps.iter().enumerate() {
        let before_outer = outer;
        if let Some((a, b)) = step.split_edge {
            if step.kind == StepKind::II && rs.is_present(a) && rs.has_edge(a, b) && !plus_one {
                tracker.remove_edge(a, b);
            }
        }
        let mut probe = rs.clone();
        if let Some((a, b)) = step.split_edge {
            if probe.is_present(a) && probe.has_edge(a, b) {
                probe.remove_neighbor(a, b);
                probe.remove_neighbor(b, a);
            }
        }
        apply_step(&mut rs, step).map_err(|r| bad(i, r))?;
        if probe.has_edge(before_outer.0, before_outer.1) {
            let outer_walk = probe.face_walk(before_outer.0, before_outer.1);
            if same_cycle(&outer_walk, &step.face) != step.into_outer {
                return Err(bad(i, "outer-face flag is wrong".into()));
            }
        }
        outer = step.outer;
        if !rs.is_plane() {
            return Err(bad(i, "intermediate graph is not plane".into()));
        }
        if plus_one {
            let (g, _) = rs.compact_graph();
            if !matches!(rigidity::classify(&g), RigidityClass::Circuit | RigidityClass::LamanPlusOne { .. }) {
                return Err(bad(i, "intermediate graph is not Laman-plus-one".into()));
            }
        } else {
            for &u in &step.neighbors {
                if !tracker.try_insert(step.vertex, u) {
                    return Err(bad(i, "intermediate graph is not Laman".into()));
                }
            }
        }
        visit(Some(i), &rs);
    }
    if rs.vertex_count() != seq.n {
        return Err(bad(seq.steps.len(), format!("only {} of {} vertices placed", rs.vertex_count(), seq.n)));
    }
    Ok(PlaneGraph::from_rotations(rs, outer)?)
}

/// A dart on the face left of `outer` that avoids `v`.
fn outer_dart_avoiding(rs: &RotationSystem, outer: (VertexId, VertexId), v: VertexId) -> Option<(VertexId, VertexId)> {
    if outer.0 != v && outer.1 != v {
        return Some(outer);
    }
    let walk = rs.face_walk(outer.0, outer.1);
    (0..walk.len())
        .map(|i| (walk[i], walk[(i + 1) % walk.len()]))
        .find(|&(a, b)| a != v && b != v)
}

/// Remove `v` from `rs`, returning the partially filled step (kind I data).
fn detach(rs: &mut RotationSystem, v: VertexId, outer: &mut (VertexId, VertexId)) -> Option<HennebergStep> {
    let neighbors = rs.neighbors(v).to_vec();
    let anchors: Vec<VertexId> = neighbors.iter().map(|&u| rs.predecessor(u, v)).collect();
    let after = *outer;
    let new_outer = outer_dart_avoiding(rs, *outer, v)?;
    rs.remove_vertex(v);
    let face = rs.face_walk(neighbors[0], anchors[0]);
    let into_outer = same_cycle(&face, &rs.face_walk(new_outer.0, new_outer.1));
    *outer = new_outer;
    Some(HennebergStep {
        kind: StepKind::I,
        vertex: v,
        neighbors,
        anchors,
        split_edge: None,
        face,
        into_outer,
        outer: after,
    })
}

/// Put the chord `a - b` where the removed vertex sat in both rotations.
fn place_chord(rs: &mut RotationSystem, step: &mut HennebergStep, a: VertexId, b: VertexId) {
    let anchor = |u: VertexId| step.anchors[step.neighbors.iter().position(|&x| x == u).unwrap()];
    let (aa, ab) = (anchor(a), anchor(b));
    rs.insert_after(a, aa, b);
    rs.insert_after(b, ab, a);
    step.kind = StepKind::II;
    step.split_edge = Some((a.min(b), a.max(b)));
}

fn pairs(nbrs: &[VertexId]) -> Vec<(VertexId, VertexId)> {
    let mut s = nbrs.to_vec();
    s.sort_unstable();
    vec![(s[0], s[1]), (s[0], s[2]), (s[1], s[2])]
}

fn candidates(rs: &RotationSystem, keep: &[VertexId]) -> Vec<VertexId> {
    let mut c: Vec<VertexId> =
        rs.present_vertices().filter(|&v| !keep.contains(&v) && rs.degree(v) <= 3).collect();
    c.sort_by_key(|&v| (rs.degree(v), std::cmp::Reverse(v)));
    c
}

fn initial_outer(g: &PlaneGraph) -> (VertexId, VertexId) {
    let w = g.face(g.outer_face()).vertices();
    (w[0], w[1 % w.len()])
}

/// Henneberg sequence of a plane Laman graph, obtained by peeling vertices
/// of degree 2, then 3, largest id first.
pub fn reverse_sequence(g: &PlaneGraph, prescribed: &Prescription) -> Result<HennebergSequence, HennebergError> {
    let n = g.n();
    let graph = g.graph();
    if !rigidity::is_laman(&graph) {
        return Err(HennebergError::NotLaman);
    }
    let keep_all: Vec<VertexId> = match *prescribed {
        Prescription::None => Vec::new(),
        Prescription::Pair(a, b) => {
            if a >= n || b >= n || a == b {
                return Err(HennebergError::PrescriptionInvalid(format!("pair {a}, {b}")));
            }
            vec![a, b]
        }
        Prescription::Triangle(a, b, c) => {
            let t = [a, b, c];
            if t.iter().any(|&x| x >= n) || a == b || b == c || a == c {
                return Err(HennebergError::PrescriptionInvalid(format!("triangle {a}, {b}, {c}")));
            }
            if !(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) {
                return Err(HennebergError::PrescriptionInvalid(format!("{a}, {b}, {c} is not a triangle")));
            }
            t.to_vec()
        }
    };
    let mut rs = g.rotation_system().clone();
    let mut outer = initial_outer(g);
    let mut tracker = IndependenceTracker::new(n);
    for &(u, v) in g.edges() {
        tracker.try_insert(u, v);
    }
    let mut reversed = Vec::with_capacity(n.saturating_sub(2));
    while rs.vertex_count() > 2 {
        let keep: Vec<VertexId> = if keep_all.len() == 3 && rs.vertex_count() == 3 {
            let mut t = keep_all.clone();
            t.sort_unstable();
            t[..2].to_vec()
        } else {
            keep_all.clone()
        };
        let mut done = false;
        for v in candidates(&rs, &keep) {
            let nbrs = rs.neighbors(v).to_vec();
            for &u in &nbrs {
                tracker.remove_edge(v, u);
            }
            if nbrs.len() == 2 {
                let step = detach(&mut rs, v, &mut outer).ok_or(HennebergError::ReductionStuck(rs.vertex_count()))?;
                reversed.push(step);
                done = true;
                break;
            }
            let chord = pairs(&nbrs).into_iter().find(|&(a, b)| !rs.has_edge(a, b) && tracker.can_insert(a, b));
            match chord {
                Some((a, b)) => {
                    let mut step =
                        detach(&mut rs, v, &mut outer).ok_or(HennebergError::ReductionStuck(rs.vertex_count()))?;
                    place_chord(&mut rs, &mut step, a, b);
                    tracker.try_insert(a, b);
                    reversed.push(step);
                    done = true;
                    break;
                }
                None => {
                    for &u in &nbrs {
                        tracker.try_insert(v, u);
                    }
                }
            }
        }
        if !done {
            return Err(HennebergError::ReductionStuck(rs.vertex_count()));
        }
    }
    let rest: Vec<VertexId> = rs.present_vertices().collect();
    reversed.reverse();
    Ok(HennebergSequence { n, base: Base::Edge(rest[0], rest[1]), steps: reversed })
}

fn is_plus_one(rs: &RotationSystem) -> bool {
    let (g, _) = rs.compact_graph();
    g.m() == 2 * g.n - 2 && rigidity::rank(&g) == 2 * g.n - 3
}

/// Henneberg sequence from a plane K4 for a plane Laman-plus-one graph.
pub fn reverse_sequence_plus_one(g: &PlaneGraph) -> Result<HennebergSequence, HennebergError> {
    let n = g.n();
    if n < 4 || !matches!(rigidity::classify(&g.graph()), RigidityClass::Circuit | RigidityClass::LamanPlusOne { .. }) {
        return Err(HennebergError::NotLamanPlusOne);
    }
    let mut rs = g.rotation_system().clone();
    let mut outer = initial_outer(g);
    let mut reversed = Vec::new();
    while rs.vertex_count() > 4 {
        let mut done = false;
        'search: for v in candidates(&rs, &[]) {
            let nbrs = rs.neighbors(v).to_vec();
            let options: Vec<Option<(VertexId, VertexId)>> =
                if nbrs.len() == 2 { vec![None] } else { pairs(&nbrs).into_iter().map(Some).collect() };
            for chord in options {
                if let Some((a, b)) = chord {
                    if rs.has_edge(a, b) {
                        continue;
                    }
                }
                let mut trial = rs.clone();
                let mut trial_outer = outer;
                let Some(mut step) = detach(&mut trial, v, &mut trial_outer) else { continue };
                if let Some((a, b)) = chord {
                    place_chord(&mut trial, &mut step, a, b);
                }
                if is_plus_one(&trial) {
                    rs = trial;
                    outer = trial_outer;
                    reversed.push(step);
                    done = true;
                    break 'search;
                }
            }
        }
        if !done {
            return Err(HennebergError::ReductionStuck(rs.vertex_count()));
        }
    }
    let vs: Vec<VertexId> = rs.present_vertices().collect();
    let mut rotations = [[0; 3]; 4];
    for (i, &v) in vs.iter().enumerate() {
        let r = rs.neighbors(v);
        if r.len() != 3 {
            return Err(HennebergError::ReductionStuck(4));
        }
        rotations[i] = [r[0], r[1], r[2]];
    }
    reversed.reverse();
    Ok(HennebergSequence {
        n,
        base: Base::K4 { vertices: [vs[0], vs[1], vs[2], vs[3]], rotations, outer },
        steps: reversed,
    })
}

/// Surround the graph with a new outer triangle `n, n+1, n+2`, each new
/// vertex joined to one of three distinct old outer vertices.
///
/// Returns the new graph and, for each new vertex id, the original id.
pub fn augment_outer_triangle(g: &PlaneGraph) -> Result<(PlaneGraph, Vec<Option<VertexId>>), HennebergError> {
    let n = g.n();
    let hull = g.outer_cycle_ccw();
    let h = hull.len();
    if h < 3 {
        return Err(HennebergError::OuterFaceTooSmall(h));
    }
    if h == 3 {
        return Ok((g.clone(), (0..n).map(Some).collect()));
    }
    let mut rot: Vec<Vec<VertexId>> = (0..n).map(|v| g.rotation(v).to_vec()).collect();
    let t = [n, n + 1, n + 2];
    let attach = [hull[0], hull[h / 3], hull[2 * h / 3]];
    let walk = g.face(g.outer_face()).vertices();
    for i in 0..3 {
        let o = attach[i];
        // the outer angle at o starts at the next vertex of the clockwise outer walk
        let p = walk.iter().position(|&x| x == o).unwrap();
        let next = walk[(p + 1) % walk.len()];
        let j = rot[o].iter().position(|&x| x == next).unwrap();
        rot[o].insert(j + 1, t[i]);
    }
    for i in 0..3 {
        rot.push(vec![t[(i + 1) % 3], attach[i], t[(i + 2) % 3]]);
    }
    let rs = RotationSystem::from_rotations(rot);
    let out = PlaneGraph::from_rotations(rs, (t[0], t[2]))?;
    let mut mapping: Vec<Option<VertexId>> = (0..n).map(Some).collect();
    mapping.extend([None, None, None]);
    Ok((out, mapping))
}
