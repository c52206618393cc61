//! Seeded random plane Laman graphs and circuits built by interior Henneberg steps.

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use thiserror::Error;

use crate::henneberg::{insert_into_face, Base, HennebergSequence, HennebergStep, StepKind};
use crate::plane_graph::{RotationSystem, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenerateError {
    #[error("{kind:?} instances need at least {min} vertices, got {n}")]
    BadSize { kind: GraphKind, n: usize, min: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphKind {
    Laman,
    Circuit,
}

/// Probability of a vertex addition when both step kinds are allowed.
const P_VERTEX_ADDITION: f64 = 0.6;

/// Outer dart of every generated graph: the outer face is the triangle 0, 1, 2.
const OUTER: (VertexId, VertexId) = (0, 2);

fn on_outer_triangle(a: VertexId, b: VertexId) -> bool {
    a < 3 && b < 3
}

fn interior_faces(rs: &RotationSystem) -> Vec<Vec<VertexId>> {
    let outer = rs.face_walk(OUTER.0, OUTER.1);
    rs.faces().into_iter().filter(|f| !crate::plane_graph::same_cycle(f, &outer)).collect()
}

fn vertex_addition(rs: &mut RotationSystem, v: VertexId, rng: &mut SplitMix64) -> HennebergStep {
    let faces = interior_faces(rs);
    let face = faces[rng.random_range(0..faces.len())].clone();
    let d = face.len();
    let p = rng.random_range(0..d);
    let q = (p + rng.random_range(1..d)) % d;
    let positions = [p.min(q), p.max(q)];
    let (neighbors, anchors) = insert_into_face(rs, v, &face, &positions);
    HennebergStep { kind: StepKind::I, vertex: v, neighbors, anchors, split_edge: None, face, into_outer: false, outer: OUTER }
}

/// Split a random edge away from the outer triangle; `None` if every edge is on it.
fn edge_split(rs: &mut RotationSystem, v: VertexId, rng: &mut SplitMix64) -> Option<HennebergStep> {
    let eligible: Vec<(VertexId, VertexId)> = rs.edges().into_iter().filter(|&(a, b)| !on_outer_triangle(a, b)).collect();
    if eligible.is_empty() {
        return None;
    }
    let (a, b) = eligible[rng.random_range(0..eligible.len())];
    let before = rs.predecessor(a, b);
    rs.remove_neighbor(a, b);
    rs.remove_neighbor(b, a);
    let face = rs.face_walk(a, before);
    let pa = face.iter().position(|&x| x == a).unwrap();
    let pb = face.iter().position(|&x| x == b).unwrap();
    let others: Vec<usize> = (0..face.len()).filter(|&i| face[i] != a && face[i] != b).collect();
    let pc = others[rng.random_range(0..others.len())];
    let mut positions = [pa, pb, pc];
    positions.sort_unstable();
    let (neighbors, anchors) = insert_into_face(rs, v, &face, &positions);
    Some(HennebergStep {
        kind: StepKind::II,
        vertex: v,
        neighbors,
        anchors,
        split_edge: Some((a.min(b), a.max(b))),
        face,
        into_outer: false,
        outer: OUTER,
    })
}

/// Forward construction of a plane Laman graph or plane rigidity circuit on
/// `n` vertices with outer face `0, 1, 2`. Deterministic in `(n, seed, kind)`.
///
/// Laman graphs grow from an edge, then the triangle, by vertex additions
/// (probability 0.6) and edge splits; circuits grow from a plane K4 by
/// edge splits only. Every step goes into an interior face.
pub fn generate_sequence(n: usize, seed: u64, kind: GraphKind) -> Result<HennebergSequence, GenerateError> {
    let min = match kind {
        GraphKind::Laman => 3,
        GraphKind::Circuit => 4,
    };
    if n < min {
        return Err(GenerateError::BadSize { kind, n, min });
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut steps = Vec::with_capacity(n);
    let (base, mut rs, first) = match kind {
        GraphKind::Laman => {
            let base = Base::Edge(0, 1);
            let mut rs = RotationSystem::empty(n);
            rs.add_vertex(0, vec![1]);
            rs.add_vertex(1, vec![0]);
            let face = rs.face_walk(0, 1);
            let (neighbors, anchors) = insert_into_face(&mut rs, 2, &face, &[0, 1]);
            steps.push(HennebergStep {
                kind: StepKind::I,
                vertex: 2,
                neighbors,
                anchors,
                split_edge: None,
                face,
                into_outer: true,
                outer: OUTER,
            });
            (base, rs, 3)
        }
        GraphKind::Circuit => {
            let rotations = [[1, 3, 2], [2, 3, 0], [0, 3, 1], [0, 1, 2]];
            let base = Base::K4 { vertices: [0, 1, 2, 3], rotations, outer: OUTER };
            let mut rs = RotationSystem::empty(n);
            for (v, r) in rotations.iter().enumerate() {
                rs.add_vertex(v, r.to_vec());
            }
            (base, rs, 4)
        }
    };
    for v in first..n {
        let split = kind == GraphKind::Circuit || !rng.random_bool(P_VERTEX_ADDITION);
        let step = if split { edge_split(&mut rs, v, &mut rng) } else { None };
        let step = match step {
            Some(s) => s,
            None => vertex_addition(&mut rs, v, &mut rng),
        };
        steps.push(step);
    }
    Ok(HennebergSequence { n, base, steps })
}
