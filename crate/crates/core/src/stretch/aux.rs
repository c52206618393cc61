//! The partially directed triangulation driving the Tutte solve.

use rand::Rng;
use rand::SeedableRng;
use rand_xoshiro::SplitMix64;

use crate::cpt::CptLabeling;
use crate::plane_graph::{PlaneGraph, RotationSystem, VertexId};

use super::{StretchError, WeightMode};

/// `graph` contains the labeled graph plus the dissection diagonals of its
/// interior faces. Boundary vertices have no out-edges.
#[derive(Clone, Debug)]
pub struct AuxDigraph {
    pub graph: PlaneGraph,
    /// Outer cycle, counter-clockwise.
    pub boundary: Vec<VertexId>,
    /// Weighted out-neighbours per vertex.
    pub out: Vec<Vec<(VertexId, f64)>>,
    /// The diagonal leaving each vertex through its big angle.
    pub diagonal_of: Vec<Option<VertexId>>,
    pub diagonals: Vec<(VertexId, VertexId)>,
}

impl AuxDigraph {
    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn on_boundary(&self) -> Vec<bool> {
        let mut b = vec![false; self.n()];
        for &v in &self.boundary {
            b[v] = true;
        }
        b
    }

    pub fn interior_vertices(&self) -> Vec<VertexId> {
        let b = self.on_boundary();
        (0..self.n()).filter(|&v| !b[v]).collect()
    }

    /// Directed edge count, counting each direction once.
    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }
}

/// Outer cycle of `g`, or the first vertex it repeats.
pub(crate) fn simple_boundary(g: &PlaneGraph) -> Result<Vec<VertexId>, StretchError> {
    let cycle = g.outer_cycle_ccw();
    let mut seen = vec![false; g.n()];
    for &v in &cycle {
        if seen[v] {
            return Err(StretchError::RepeatedBoundaryVertex(v));
        }
        seen[v] = true;
    }
    Ok(cycle)
}

/// Split one face walk with its big flags until only triangles remain,
/// inserting the diagonals into `rs`.
fn dissect_face(
    rs: &mut RotationSystem,
    walk: Vec<VertexId>,
    big: Vec<bool>,
    diagonal_of: &mut [Option<VertexId>],
    diagonals: &mut Vec<(VertexId, VertexId)>,
) -> Result<(), StretchError> {
    let mut stack = vec![(walk, big)];
    while let Some((w, b)) = stack.pop() {
        let d = w.len();
        if d == 3 {
            continue;
        }
        let small: Vec<usize> = (0..d).filter(|&i| !b[i]).collect();
        if small.len() != 3 {
            return Err(StretchError::InvalidLabeling);
        }
        let mut candidates: Vec<usize> = (0..d).filter(|&i| b[i]).collect();
        candidates.sort_by_key(|&i| w[i]);
        let mut chosen = None;
        for &i in &candidates {
            let cb = (1..d).map(|s| (i + s) % d).find(|&j| !b[j]).unwrap();
            let ca = (1..d).map(|s| (i + d - s) % d).find(|&j| !b[j]).unwrap();
            let cc = *small.iter().find(|&&j| j != ca && j != cb).unwrap();
            if !rs.has_edge(w[i], w[cc]) {
                chosen = Some((i, cc));
                break;
            }
        }
        let (i, k) = chosen.ok_or(StretchError::DissectionFailed(w.clone()))?;
        let (v, c) = (w[i], w[k]);
        rs.insert_after(v, w[(i + 1) % d], c);
        rs.insert_after(c, w[(k + 1) % d], v);
        diagonal_of[v] = Some(c);
        diagonals.push((v.min(c), v.max(c)));
        let span = |from: usize, to: usize| {
            let len = (to + d - from) % d + 1;
            let idx: Vec<usize> = (0..len).map(|s| (from + s) % d).collect();
            let sw: Vec<VertexId> = idx.iter().map(|&j| w[j]).collect();
            let mut sb: Vec<bool> = idx.iter().map(|&j| b[j]).collect();
            sb[0] = false;
            sb[len - 1] = false;
            (sw, sb)
        };
        stack.push(span(i, k));
        stack.push(span(k, i));
    }
    Ok(())
}

/// Dissect every interior face and orient the edges.
///
/// Interior pointed vertices point along their two extreme edges and along
/// the diagonal through their big angle; interior non-pointed vertices point
/// to all their neighbours in `g`.
pub fn build_aux_digraph(g: &PlaneGraph, lab: &CptLabeling, weights: WeightMode) -> Result<AuxDigraph, StretchError> {
    if lab.len() != g.dart_count() {
        return Err(StretchError::InvalidLabeling);
    }
    let boundary = simple_boundary(g)?;
    let n = g.n();
    let mut rs = g.rotation_system().clone();
    let mut diagonal_of = vec![None; n];
    let mut diagonals = Vec::new();
    for f in g.interior_faces() {
        let face = g.face(f);
        let big: Vec<bool> = face.darts().iter().map(|&d| lab.is_big(d)).collect();
        dissect_face(&mut rs, face.vertices().to_vec(), big, &mut diagonal_of, &mut diagonals)?;
    }
    diagonals.sort_unstable();
    let outer = g.face(g.outer_face()).darts()[0];
    let graph = PlaneGraph::from_rotations(rs, (g.dart_origin(outer), g.dart_target(outer)))?;

    let mut on_boundary = vec![false; n];
    for &v in &boundary {
        on_boundary[v] = true;
    }
    let mut rng = match weights {
        WeightMode::Unit => None,
        WeightMode::Random { seed } => Some(SplitMix64::seed_from_u64(seed)),
    };
    let mut out = vec![Vec::new(); n];
    for v in 0..n {
        if on_boundary[v] {
            continue;
        }
        let targets: Vec<VertexId> = match lab.big_angle_at(g, v) {
            Some(d) => {
                let a = g.angle(d);
                let diag = diagonal_of[v].ok_or(StretchError::InvalidLabeling)?;
                vec![a.first, diag, a.second]
            }
            None if lab.is_pointed(g, v) => return Err(StretchError::InvalidLabeling),
            None => g.rotation(v).to_vec(),
        };
        out[v] = targets
            .into_iter()
            .map(|u| {
                let w = rng.as_mut().map_or(1.0, |r| r.random_range(0.5..1.5));
                (u, w)
            })
            .collect();
    }
    Ok(AuxDigraph { graph, boundary, out, diagonal_of, diagonals })
}
