//! Combinatorial pseudo-triangulation (cpt) labelings.
//!
//! A labeling marks every angle big or small. It is a cpt when every
//! interior face has exactly three small angles (its corners), the outer
//! face has only big angles, no vertex has two big angles and every
//! degree-2 vertex has exactly one.

mod corners;
mod extend;
mod matching;

pub use corners::{
    check_all_subgraph_corners, connected_hole_free_subsets, corner_stats, find_corner_deficient_subset,
    SubgraphCornerStats,
};
pub use extend::{base_labels, extend_cpt_step, labels_along_sequence, RotationLabels};
pub use matching::{build_matching_graph, enumerate_perfect_matchings, maximum_matching, MatchingGraph};

use thiserror::Error;

use crate::plane_graph::{DartId, FaceId, PlaneGraph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CptError {
    #[error("{m} edges on {n} vertices, expected {expected}")]
    BadEdgeCount { n: usize, m: usize, expected: usize },
    #[error("prescribed non-pointed vertex {0} lies on the outer face")]
    PrescribedVertexOnOuterFace(VertexId),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(VertexId),
    #[error("no perfect matching: the graph admits no such labeling")]
    NoPerfectMatching,
    #[error("vertex subset is not connected and hole-free")]
    NotSimplyConnected,
    #[error("{n} vertices exceeds the enumeration limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("no valid labeling extends across step {0}")]
    NoValidExtension(usize),
    #[error("labeling has {got} angles, graph has {expected}")]
    SizeMismatch { got: usize, expected: usize },
}

/// Big/small flag per angle, indexed by dart id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CptLabeling {
    big: Vec<bool>,
}

impl CptLabeling {
    pub fn all_small(g: &PlaneGraph) -> Self {
        CptLabeling { big: vec![false; g.dart_count()] }
    }

    pub fn from_flags(big: Vec<bool>) -> Self {
        CptLabeling { big }
    }

    pub fn from_big_darts(g: &PlaneGraph, darts: &[DartId]) -> Self {
        let mut l = Self::all_small(g);
        for &d in darts {
            l.big[d] = true;
        }
        l
    }

    pub fn len(&self) -> usize {
        self.big.len()
    }

    pub fn is_empty(&self) -> bool {
        self.big.is_empty()
    }

    pub fn is_big(&self, d: DartId) -> bool {
        self.big[d]
    }

    pub fn set(&mut self, d: DartId, big: bool) {
        self.big[d] = big;
    }

    pub fn flags(&self) -> &[bool] {
        &self.big
    }

    /// Sorted dart ids of the big angles.
    pub fn big_darts(&self) -> Vec<DartId> {
        (0..self.big.len()).filter(|&d| self.big[d]).collect()
    }

    /// The big angle at `v`, if it has exactly one.
    pub fn big_angle_at(&self, g: &PlaneGraph, v: VertexId) -> Option<DartId> {
        let mut it = g.darts_of(v).filter(|&d| self.big[d]);
        let first = it.next()?;
        it.next().is_none().then_some(first)
    }

    pub fn is_pointed(&self, g: &PlaneGraph, v: VertexId) -> bool {
        g.darts_of(v).any(|d| self.big[d])
    }

    pub fn nonpointed(&self, g: &PlaneGraph) -> Vec<VertexId> {
        (0..g.n()).filter(|&v| !self.is_pointed(g, v)).collect()
    }

    /// Walk positions of the small angles of face `f`.
    pub fn corners(&self, g: &PlaneGraph, f: FaceId) -> Vec<usize> {
        let face = g.face(f);
        (0..face.degree()).filter(|&i| !self.big[face.darts()[i]]).collect()
    }
}

/// Per-axiom outcome of [`validate_cpt`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CptReport {
    /// Every interior face has exactly three small angles.
    pub three_small_per_face: bool,
    /// The outer face has only big angles.
    pub outer_all_big: bool,
    /// No vertex has more than one big angle.
    pub at_most_one_big: bool,
    /// Every degree-2 vertex has exactly one big angle.
    pub degree_two_pointed: bool,
    pub nonpointed: Vec<VertexId>,
    /// Non-pointed count equals `m - (2n - 3)`.
    pub nonpointed_count_matches: bool,
    pub violations: Vec<String>,
}

impl CptReport {
    pub fn is_valid(&self) -> bool {
        self.three_small_per_face && self.outer_all_big && self.at_most_one_big && self.degree_two_pointed
    }
}

pub fn validate_cpt(g: &PlaneGraph, lab: &CptLabeling) -> CptReport {
    let mut violations = Vec::new();
    if lab.len() != g.dart_count() {
        violations.push(format!("labeling has {} angles, graph has {}", lab.len(), g.dart_count()));
        return CptReport {
            three_small_per_face: false,
            outer_all_big: false,
            at_most_one_big: false,
            degree_two_pointed: false,
            nonpointed: Vec::new(),
            nonpointed_count_matches: false,
            violations,
        };
    }
    let mut three_small = true;
    let mut outer_big = true;
    for (f, face) in g.faces().iter().enumerate() {
        let small = face.darts().iter().filter(|&&d| !lab.is_big(d)).count();
        if f == g.outer_face() {
            if small != 0 {
                outer_big = false;
                violations.push(format!("outer face has {small} small angles"));
            }
        } else if small != 3 {
            three_small = false;
            violations.push(format!("face {f} has {small} small angles"));
        }
    }
    let mut one_big = true;
    let mut deg_two = true;
    for v in 0..g.n() {
        let bigs = g.darts_of(v).filter(|&d| lab.is_big(d)).count();
        if bigs > 1 {
            one_big = false;
            violations.push(format!("vertex {v} has {bigs} big angles"));
        }
        if g.degree(v) == 2 && bigs != 1 {
            deg_two = false;
            violations.push(format!("degree-2 vertex {v} has {bigs} big angles"));
        }
    }
    let nonpointed = lab.nonpointed(g);
    let expected = g.m() as i64 - (2 * g.n() as i64 - 3);
    CptReport {
        three_small_per_face: three_small,
        outer_all_big: outer_big,
        at_most_one_big: one_big,
        degree_two_pointed: deg_two,
        nonpointed_count_matches: nonpointed.len() as i64 == expected,
        nonpointed,
        violations,
    }
}

/// Labeling read off a perfect matching: each matched vertex gets its big
/// angle in the matched face; everything else is small.
pub fn labeling_from_matching(g: &PlaneGraph, h: &MatchingGraph, mate: &[usize]) -> CptLabeling {
    let mut lab = CptLabeling::all_small(g);
    for (i, &w) in mate.iter().enumerate() {
        let v = h.left[i];
        let f = h.right[w].0;
        let d = g.darts_of(v).find(|&d| g.dart_face(d) == f).expect("matched face is incident");
        lab.set(d, true);
    }
    lab
}

/// A cpt found through a perfect matching of the vertex/face-copy graph.
pub fn assign_cpt(g: &PlaneGraph, prescribed_nonpointed: Option<VertexId>) -> Result<CptLabeling, CptError> {
    let h = build_matching_graph(g, prescribed_nonpointed)?;
    if h.left.len() != h.right.len() {
        return Err(CptError::NoPerfectMatching);
    }
    let mate = maximum_matching(&h.adj, h.right.len());
    let mate: Option<Vec<usize>> = mate.into_iter().collect();
    let mate = mate.ok_or(CptError::NoPerfectMatching)?;
    let lab = labeling_from_matching(g, &h, &mate);
    if !validate_cpt(g, &lab).is_valid() {
        return Err(CptError::NoPerfectMatching);
    }
    Ok(lab)
}

/// Every valid cpt labeling, by trying every choice of at most one big
/// angle per vertex. Exhaustive; only for small test instances.
pub fn enumerate_cpts(g: &PlaneGraph) -> Vec<CptLabeling> {
    let mut out = Vec::new();
    let mut lab = CptLabeling::all_small(g);
    // small angles still allowed per face, pruning partial choices
    let mut budget: Vec<i64> = g
        .faces()
        .iter()
        .enumerate()
        .map(|(f, face)| if f == g.outer_face() { 0 } else { face.degree() as i64 - 3 })
        .collect();
    fn rec(v: usize, g: &PlaneGraph, lab: &mut CptLabeling, budget: &mut [i64], out: &mut Vec<CptLabeling>) {
        if v == g.n() {
            if validate_cpt(g, lab).is_valid() {
                out.push(lab.clone());
            }
            return;
        }
        if g.degree(v) != 2 {
            rec(v + 1, g, lab, budget, out);
        }
        for d in g.darts_of(v) {
            let f = g.dart_face(d);
            if f != g.outer_face() && budget[f] == 0 {
                continue;
            }
            lab.set(d, true);
            budget[f] -= 1;
            rec(v + 1, g, lab, budget, out);
            budget[f] += 1;
            lab.set(d, false);
        }
    }
    rec(0, g, &mut lab, &mut budget, &mut out);
    out.sort();
    out
}
