//! Carrying a cpt labeling forward along Henneberg steps.
//!
//! Intermediate graphs are rotation systems over a sparse vertex set, so
//! labels are keyed by angle identity `(vertex, first neighbour)`: the angle
//! at `vertex` that sweeps counter-clockwise from `first neighbour`.

use std::collections::BTreeMap;

use crate::henneberg::{apply_step, base_state, Base, HennebergSequence, HennebergStep, StepKind};
use crate::plane_graph::{PlaneGraph, RotationSystem, VertexId};

use super::{CptError, CptLabeling};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RotationLabels {
    big: BTreeMap<(VertexId, VertexId), bool>,
}

impl RotationLabels {
    pub fn is_big(&self, v: VertexId, first: VertexId) -> bool {
        self.big.get(&(v, first)).copied().unwrap_or(false)
    }

    pub fn set(&mut self, v: VertexId, first: VertexId, big: bool) {
        self.big.insert((v, first), big);
    }

    /// The labeling on a plane graph with the same rotations.
    pub fn to_labeling(&self, g: &PlaneGraph) -> CptLabeling {
        let flags = (0..g.dart_count()).map(|d| self.is_big(g.dart_origin(d), g.dart_target(d))).collect();
        CptLabeling::from_flags(flags)
    }

    pub fn from_labeling(g: &PlaneGraph, lab: &CptLabeling) -> Self {
        let mut out = RotationLabels::default();
        for d in 0..g.dart_count() {
            out.set(g.dart_origin(d), g.dart_target(d), lab.is_big(d));
        }
        out
    }

    fn bigs_at(&self, rs: &RotationSystem, v: VertexId) -> usize {
        rs.neighbors(v).iter().filter(|&&u| self.is_big(v, u)).count()
    }
}

/// Labels of a base graph: the outer face big, every other angle small.
pub fn base_labels(base: &Base, universe: usize) -> (RotationSystem, RotationLabels) {
    let (rs, outer) = base_state(base, universe);
    let mut labels = RotationLabels::default();
    for v in rs.present_vertices() {
        for &u in rs.neighbors(v) {
            labels.set(v, u, false);
        }
    }
    let walk = rs.face_walk(outer.0, outer.1);
    for i in 0..walk.len() {
        labels.set(walk[i], walk[(i + 1) % walk.len()], true);
    }
    (rs, labels)
}

/// Darts of the face left of `(u, v)`.
fn face_darts(rs: &RotationSystem, u: VertexId, v: VertexId) -> Vec<(VertexId, VertexId)> {
    let walk = rs.face_walk(u, v);
    (0..walk.len()).map(|i| (walk[i], walk[(i + 1) % walk.len()])).collect()
}

/// Extend a valid labeling of the graph before `step` to the graph after it.
///
/// Merged angles are big if either part was; a split small angle gives two
/// small ones, a split big angle one big and one small; the new vertex gets
/// at most one big angle. Among the valid outcomes, the one whose flags,
/// listed by `(vertex, first neighbour)`, are lexicographically smallest
/// (small before big) wins.
pub fn extend_cpt_step(
    rs: &RotationSystem,
    labels: &RotationLabels,
    step: &HennebergStep,
) -> Result<(RotationSystem, RotationLabels), CptError> {
    let v = step.vertex;
    let fail = || CptError::NoValidExtension(v);
    let mut after = rs.clone();
    apply_step(&mut after, step).map_err(|_| fail())?;
    let mut base = labels.clone();
    let mut touched: Vec<VertexId> = step.neighbors.clone();
    if let (StepKind::II, Some((a, b))) = (step.kind, step.split_edge) {
        for (x, y) in [(a, b), (b, a)] {
            let prev = rs.predecessor(x, y);
            let merged = labels.is_big(x, prev) || labels.is_big(x, y);
            base.big.remove(&(x, y));
            base.set(x, prev, merged);
        }
    }
    // split angles: (u, anchor) becomes (u, anchor) + (u, v)
    let mut split_big = Vec::new();
    for (&u, &anchor) in step.neighbors.iter().zip(&step.anchors) {
        split_big.push(base.is_big(u, anchor));
        base.set(u, anchor, false);
        base.set(u, v, false);
    }
    for &u in &step.neighbors {
        base.set(v, u, false);
    }
    touched.push(v);
    touched.sort_unstable();
    touched.dedup();

    let target_np = |lab: &RotationLabels, g: &RotationSystem, x: VertexId| lab.bigs_at(g, x) == 0;
    let np_before: usize = step.neighbors.iter().filter(|&&x| target_np(labels, rs, x)).count();
    let k = step.neighbors.len();
    let split_choices: usize = split_big.iter().map(|&b| if b { 2 } else { 1 }).product();
    let faces: Vec<Vec<(VertexId, VertexId)>> = step.neighbors.iter().map(|&u| face_darts(&after, v, u)).collect();
    let outer_face: Vec<bool> = faces.iter().map(|f| f.contains(&step.outer)).collect();

    let mut best: Option<(Vec<bool>, RotationLabels)> = None;
    for code in 0..split_choices {
        let mut c = code;
        let mut lab = base.clone();
        for i in 0..k {
            if split_big[i] {
                let second = c % 2 == 1;
                c /= 2;
                let u = step.neighbors[i];
                lab.set(u, step.anchors[i], !second);
                lab.set(u, v, second);
            }
        }
        for new_big in 0..=k {
            let mut cand = lab.clone();
            if new_big < k {
                cand.set(v, step.neighbors[new_big], true);
            }
            let faces_ok = faces.iter().zip(&outer_face).all(|(f, &outer)| {
                let small = f.iter().filter(|&&(x, y)| !cand.is_big(x, y)).count();
                if outer {
                    small == 0
                } else {
                    small == 3
                }
            });
            if !faces_ok {
                continue;
            }
            let vertices_ok = touched.iter().all(|&x| {
                let bigs = cand.bigs_at(&after, x);
                bigs <= 1 && (after.degree(x) != 2 || bigs == 1)
            });
            if !vertices_ok {
                continue;
            }
            let np_after = touched.iter().filter(|&&x| target_np(&cand, &after, x)).count();
            if np_after != np_before {
                continue;
            }
            let key: Vec<bool> = touched
                .iter()
                .flat_map(|&x| {
                    let mut r = after.neighbors(x).to_vec();
                    r.sort_unstable();
                    r.into_iter().map(move |y| (x, y))
                })
                .map(|(x, y)| cand.is_big(x, y))
                .collect();
            if best.as_ref().is_none_or(|(k0, _)| key < *k0) {
                best = Some((key, cand));
            }
        }
    }
    let (_, lab) = best.ok_or_else(fail)?;
    Ok((after, lab))
}

/// Replay a sequence from its base labeling, extending at every step.
/// Calls `visit` with the state after the base and after each step.
pub fn labels_along_sequence(
    seq: &HennebergSequence,
    mut visit: impl FnMut(Option<usize>, &RotationSystem, &RotationLabels),
) -> Result<(RotationSystem, RotationLabels), CptError> {
    let (mut rs, mut labels) = base_labels(&seq.base, seq.n);
    visit(None, &rs, &labels);
    for (i, step) in seq.steps.iter().enumerate() {
        let (next_rs, next_labels) = extend_cpt_step(&rs, &labels, step)?;
        rs = next_rs;
        labels = next_labels;
        visit(Some(i), &rs, &labels);
    }
    Ok((rs, labels))
}
