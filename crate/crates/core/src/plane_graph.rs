//! Combinatorial embeddings of connected plane graphs.
//!
//! A plane graph is stored as a rotation system: for every vertex the
//! counter-clockwise cyclic order of its neighbours (y axis pointing up).
//! Faces are traced with the face on the left of every directed edge, so
//! interior faces come out counter-clockwise and the outer face clockwise.
//!
//! Every directed edge (dart) `v -> r[j]` owns the angle at `v` that sweeps
//! counter-clockwise from `r[j]` to `r[j + 1]`; that angle lies in the face
//! traced through the dart. Angle identity is therefore the dart id, which
//! keeps two occurrences of one vertex on the same face apart.

use std::collections::VecDeque;

use thiserror::Error;

use crate::rigidity::Graph;

pub type VertexId = usize;
pub type FaceId = usize;
pub type DartId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("degenerate graph: {0}")]
    DegenerateGraph(String),
    #[error("inconsistent rotation at vertex {vertex}: {reason}")]
    InconsistentRotation { vertex: VertexId, reason: String },
    #[error("rotation system is not planar (Euler characteristic {0}, expected 2)")]
    NonPlanarRotation(i64),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("outer face hint {0:?} matches no traced face")]
    OuterFaceNotFound(Vec<VertexId>),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(VertexId),
    #[error("empty vertex subset")]
    EmptySubset,
    #[error("vertex subset does not induce a connected subgraph")]
    DisconnectedSubset,
}

/// Rotation system over a fixed vertex universe; absent vertices have no rotation.
///
/// This is the mutable working representation used while growing or
/// shrinking graphs step by step. [`PlaneGraph`] is the validated, immutable
/// form in which every vertex of the universe is present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSystem {
    rot: Vec<Vec<VertexId>>,
    present: Vec<bool>,
}

impl RotationSystem {
    pub fn empty(universe: usize) -> Self {
        RotationSystem { rot: vec![Vec::new(); universe], present: vec![false; universe] }
    }

    pub fn from_rotations(rot: Vec<Vec<VertexId>>) -> Self {
        let present = vec![true; rot.len()];
        RotationSystem { rot, present }
    }

    pub fn universe(&self) -> usize {
        self.rot.len()
    }

    pub fn is_present(&self, v: VertexId) -> bool {
        self.present.get(v).copied().unwrap_or(false)
    }

    pub fn present_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.rot.len()).filter(move |&v| self.present[v])
    }

    pub fn vertex_count(&self) -> usize {
        self.present.iter().filter(|&&p| p).count()
    }

    pub fn edge_count(&self) -> usize {
        self.rot.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.rot[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rot[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.rot[u].contains(&v)
    }

    pub fn position(&self, v: VertexId, u: VertexId) -> Option<usize> {
        self.rot[v].iter().position(|&x| x == u)
    }

    /// Counter-clockwise successor of `u` around `v`.
    pub fn successor(&self, v: VertexId, u: VertexId) -> VertexId {
        let r = &self.rot[v];
        let i = self.position(v, u).expect("successor: not a neighbour");
        r[(i + 1) % r.len()]
    }

    /// Counter-clockwise predecessor of `u` around `v`.
    pub fn predecessor(&self, v: VertexId, u: VertexId) -> VertexId {
        let r = &self.rot[v];
        let i = self.position(v, u).expect("predecessor: not a neighbour");
        r[(i + r.len() - 1) % r.len()]
    }

    /// Next dart along the face to the left of `u -> v`.
    pub fn next_dart(&self, u: VertexId, v: VertexId) -> (VertexId, VertexId) {
        (v, self.predecessor(v, u))
    }

    /// Vertex walk of the face to the left of the dart `u -> v`, starting at `u`.
    pub fn face_walk(&self, u: VertexId, v: VertexId) -> Vec<VertexId> {
        let mut walk = Vec::new();
        let (mut a, mut b) = (u, v);
        loop {
            walk.push(a);
            let next = self.next_dart(a, b);
            a = next.0;
            b = next.1;
            if (a, b) == (u, v) {
                break;
            }
        }
        walk
    }

    /// All facial walks, in order of their first dart (vertex id, then rotation slot).
    pub fn faces(&self) -> Vec<Vec<VertexId>> {
        let mut seen: Vec<Vec<bool>> = self.rot.iter().map(|r| vec![false; r.len()]).collect();
        let mut faces = Vec::new();
        for v in 0..self.rot.len() {
            for j in 0..self.rot[v].len() {
                if seen[v][j] {
                    continue;
                }
                let walk = self.face_walk(v, self.rot[v][j]);
                for i in 0..walk.len() {
                    let a = walk[i];
                    let b = walk[(i + 1) % walk.len()];
                    let slot = self.position(a, b).unwrap();
                    seen[a][slot] = true;
                }
                faces.push(walk);
            }
        }
        faces
    }

    pub fn add_vertex(&mut self, v: VertexId, rotation: Vec<VertexId>) {
        self.present[v] = true;
        self.rot[v] = rotation;
    }

    /// Remove `v` together with its incident edges.
    pub fn remove_vertex(&mut self, v: VertexId) {
        let nbrs = std::mem::take(&mut self.rot[v]);
        for u in nbrs {
            self.rot[u].retain(|&x| x != v);
        }
        self.present[v] = false;
    }

    /// Insert `new` right after `after` in the rotation of `v`.
    pub fn insert_after(&mut self, v: VertexId, after: VertexId, new: VertexId) -> bool {
        match self.position(v, after) {
            Some(i) => {
                self.rot[v].insert(i + 1, new);
                true
            }
            None => false,
        }
    }

    pub fn remove_neighbor(&mut self, v: VertexId, u: VertexId) -> bool {
        match self.position(v, u) {
            Some(i) => {
                self.rot[v].remove(i);
                true
            }
            None => false,
        }
    }

    /// Replace neighbour `old` of `v` by `new`, keeping its slot.
    pub fn replace_neighbor(&mut self, v: VertexId, old: VertexId, new: VertexId) -> bool {
        match self.position(v, old) {
            Some(i) => {
                self.rot[v][i] = new;
                true
            }
            None => false,
        }
    }

    pub fn is_connected(&self) -> bool {
        let Some(start) = self.present_vertices().next() else {
            return false;
        };
        let mut seen = vec![false; self.rot.len()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &u in &self.rot[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    queue.push_back(u);
                }
            }
        }
        count == self.vertex_count()
    }

    /// Euler characteristic `n - m + f` of the traced rotation system.
    pub fn euler_characteristic(&self) -> i64 {
        let n = self.vertex_count() as i64;
        let m = self.edge_count() as i64;
        let f = self.faces().len() as i64;
        n - m + f
    }

    /// Connected and of genus zero.
    pub fn is_plane(&self) -> bool {
        if self.vertex_count() == 1 {
            return true;
        }
        self.is_connected() && self.euler_characteristic() == 2
    }

    /// Sorted list of edges `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::new();
        for v in 0..self.rot.len() {
            for &u in &self.rot[v] {
                if v < u {
                    out.push((v, u));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The abstract graph on the present vertices, relabelled to `0..k`.
    /// Returns the graph and the map from new ids to original ids.
    pub fn compact_graph(&self) -> (Graph, Vec<VertexId>) {
        let ids: Vec<VertexId> = self.present_vertices().collect();
        let mut index = vec![usize::MAX; self.rot.len()];
        for (i, &v) in ids.iter().enumerate() {
            index[v] = i;
        }
        let edges = self.edges().into_iter().map(|(u, v)| (index[u], index[v])).collect();
        (Graph::new(ids.len(), edges), ids)
    }

    pub fn rotations(&self) -> &[Vec<VertexId>] {
        &self.rot
    }
}

/// A traced face: vertex walk plus the dart leaving each walk position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    vertices: Vec<VertexId>,
    darts: Vec<DartId>,
}

impl Face {
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn darts(&self) -> &[DartId] {
        &self.darts
    }

    pub fn degree(&self) -> usize {
        self.vertices.len()
    }
}

/// A combinatorial angle: the corner of `face` at `vertex` between the
/// edges to `first` and `second` (counter-clockwise from `first`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Angle {
    pub dart: DartId,
    pub vertex: VertexId,
    pub face: FaceId,
    pub position: usize,
    pub first: VertexId,
    pub second: VertexId,
}

/// Boundary walk of one connected component of an induced subgraph, taken
/// around its unbounded region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryCycle {
    pub vertices: Vec<VertexId>,
    /// Number of edge traversals in the walk (0 for an isolated vertex).
    pub b: usize,
    /// Number of distinct vertices on the walk.
    pub b0: usize,
}

/// Validated connected plane graph with traced faces and a designated outer face.
#[derive(Clone, Debug)]
pub struct PlaneGraph {
    rotations: RotationSystem,
    edges: Vec<(VertexId, VertexId)>,
    offsets: Vec<usize>,
    faces: Vec<Face>,
    dart_face: Vec<FaceId>,
    dart_pos: Vec<usize>,
    outer: FaceId,
}

impl PlaneGraph {
    /// Build from an explicit edge list, rotations and an outer-face hint.
    ///
    /// The hint lists the outer boundary in counter-clockwise order as seen
    /// in a drawing, which is the reverse of the traced outer walk.
    pub fn build(
        n: usize,
        edges: &[(VertexId, VertexId)],
        rotations: Vec<Vec<VertexId>>,
        outer_hint: &[VertexId],
    ) -> Result<Self, GraphError> {
        if n < 2 {
            return Err(GraphError::DegenerateGraph(format!("need at least 2 vertices, got {n}")));
        }
        let mut canon: Vec<(VertexId, VertexId)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v));
            }
            if u == v {
                return Err(GraphError::DegenerateGraph(format!("self-loop at vertex {u}")));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DegenerateGraph(format!(
                "multi-edge {}-{}",
                w[0].0, w[0].1
            )));
        }
        if rotations.len() != n {
            return Err(GraphError::InconsistentRotation {
                vertex: rotations.len().min(n),
                reason: format!("expected {n} rotations, got {}", rotations.len()),
            });
        }
        let mut degree = vec![0usize; n];
        for &(u, v) in &canon {
            degree[u] += 1;
            degree[v] += 1;
        }
        for (v, rot) in rotations.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(GraphError::InconsistentRotation {
                    vertex: v,
                    reason: "neighbour listed twice".into(),
                });
            }
            for &u in rot {
                if u >= n {
                    return Err(GraphError::VertexOutOfRange(u));
                }
                if canon.binary_search(&(u.min(v), u.max(v))).is_err() {
                    return Err(GraphError::InconsistentRotation {
                        vertex: v,
                        reason: format!("{u} is not an edge neighbour"),
                    });
                }
            }
            if rot.len() != degree[v] {
                return Err(GraphError::InconsistentRotation {
                    vertex: v,
                    reason: format!("rotation has {} entries but degree is {}", rot.len(), degree[v]),
                });
            }
        }
        let rs = RotationSystem::from_rotations(rotations);
        Self::from_rotation_system(rs, |faces| {
            faces
                .iter()
                .position(|f| walk_matches_hint(f, outer_hint))
                .ok_or_else(|| GraphError::OuterFaceNotFound(outer_hint.to_vec()))
        })
    }

    /// Build from a rotation system (all vertices present) whose outer face
    /// is the face to the left of the dart `outer.0 -> outer.1`.
    pub fn from_rotations(rs: RotationSystem, outer: (VertexId, VertexId)) -> Result<Self, GraphError> {
        if !rs.is_present(outer.0) || !rs.has_edge(outer.0, outer.1) {
            return Err(GraphError::OuterFaceNotFound(vec![outer.0, outer.1]));
        }
        let target = rs.face_walk(outer.0, outer.1);
        Self::from_rotation_system(rs, |faces| {
            faces
                .iter()
                .position(|f| same_cycle(f, &target))
                .ok_or_else(|| GraphError::OuterFaceNotFound(target.clone()))
        })
    }

    fn from_rotation_system(
        rs: RotationSystem,
        pick_outer: impl FnOnce(&[Vec<VertexId>]) -> Result<FaceId, GraphError>,
    ) -> Result<Self, GraphError> {
        let n = rs.universe();
        if n < 2 {
            return Err(GraphError::DegenerateGraph(format!("need at least 2 vertices, got {n}")));
        }
        if let Some(v) = (0..n).find(|&v| !rs.is_present(v)) {
            return Err(GraphError::DegenerateGraph(format!("vertex {v} missing")));
        }
        if !rs.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let chi = rs.euler_characteristic();
        if chi != 2 {
            return Err(GraphError::NonPlanarRotation(chi));
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut acc = 0;
        for v in 0..n {
            offsets.push(acc);
            acc += rs.degree(v);
        }
        offsets.push(acc);
        let walks = rs.faces();
        let outer = pick_outer(&walks)?;
        let mut dart_face = vec![usize::MAX; acc];
        let mut dart_pos = vec![usize::MAX; acc];
        let mut faces = Vec::with_capacity(walks.len());
        for (f, walk) in walks.into_iter().enumerate() {
            let mut darts = Vec::with_capacity(walk.len());
            for i in 0..walk.len() {
                let a = walk[i];
                let b = walk[(i + 1) % walk.len()];
                let d = offsets[a] + rs.position(a, b).unwrap();
                dart_face[d] = f;
                dart_pos[d] = i;
                darts.push(d);
            }
            faces.push(Face { vertices: walk, darts });
        }
        let edges = rs.edges();
        Ok(PlaneGraph { rotations: rs, edges, offsets, faces, dart_face, dart_pos, outer })
    }

    pub fn n(&self) -> usize {
        self.rotations.universe()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn rotation_system(&self) -> &RotationSystem {
        &self.rotations
    }

    pub fn rotation(&self, v: VertexId) -> &[VertexId] {
        self.rotations.neighbors(v)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotations.degree(v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f]
    }

    pub fn outer_face(&self) -> FaceId {
        self.outer
    }

    pub fn interior_faces(&self) -> impl Iterator<Item = FaceId> + '_ {
        (0..self.faces.len()).filter(move |&f| f != self.outer)
    }

    /// Outer boundary in counter-clockwise drawing order.
    pub fn outer_cycle_ccw(&self) -> Vec<VertexId> {
        let walk = &self.faces[self.outer].vertices;
        let mut out = Vec::with_capacity(walk.len());
        out.push(walk[0]);
        out.extend(walk[1..].iter().rev());
        out
    }

    pub fn dart_count(&self) -> usize {
        self.dart_face.len()
    }

    /// Dart id of `v -> u`, if the edge exists.
    pub fn dart(&self, v: VertexId, u: VertexId) -> Option<DartId> {
        self.rotations.position(v, u).map(|j| self.offsets[v] + j)
    }

    /// Darts leaving `v`, in rotation order.
    pub fn darts_of(&self, v: VertexId) -> std::ops::Range<DartId> {
        self.offsets[v]..self.offsets[v + 1]
    }

    pub fn dart_origin(&self, d: DartId) -> VertexId {
        self.offsets.partition_point(|&o| o <= d) - 1
    }

    pub fn dart_target(&self, d: DartId) -> VertexId {
        let v = self.dart_origin(d);
        self.rotations.neighbors(v)[d - self.offsets[v]]
    }

    pub fn dart_face(&self, d: DartId) -> FaceId {
        self.dart_face[d]
    }

    pub fn angle(&self, d: DartId) -> Angle {
        let v = self.dart_origin(d);
        let rot = self.rotations.neighbors(v);
        let j = d - self.offsets[v];
        Angle {
            dart: d,
            vertex: v,
            face: self.dart_face[d],
            position: self.dart_pos[d],
            first: rot[j],
            second: rot[(j + 1) % rot.len()],
        }
    }

    pub fn angles(&self) -> impl Iterator<Item = Angle> + '_ {
        (0..self.dart_count()).map(move |d| self.angle(d))
    }

    /// Angles at `v`, in rotation order.
    pub fn angles_at(&self, v: VertexId) -> impl Iterator<Item = Angle> + '_ {
        self.darts_of(v).map(move |d| self.angle(d))
    }

    /// Abstract graph view for rigidity computations.
    pub fn graph(&self) -> Graph {
        Graph::new(self.n(), self.edges.clone())
    }

    /// Union faces into regions separated only by edges for which `barrier` holds.
    fn face_regions(&self, barrier: impl Fn(VertexId, VertexId) -> bool) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.faces.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(u, v) in &self.edges {
            if barrier(u, v) {
                continue;
            }
            let a = self.dart_face[self.dart(u, v).unwrap()];
            let b = self.dart_face[self.dart(v, u).unwrap()];
            let ra = find(&mut parent, a);
            let rb = find(&mut parent, b);
            if ra != rb {
                parent[ra] = rb;
            }
        }
        (0..self.faces.len()).map(|f| find(&mut parent, f)).collect()
    }

    fn subset_mask(&self, subset: &[VertexId]) -> Result<Vec<bool>, GraphError> {
        if subset.is_empty() {
            return Err(GraphError::EmptySubset);
        }
        let mut mask = vec![false; self.n()];
        for &v in subset {
            if v >= self.n() {
                return Err(GraphError::VertexOutOfRange(v));
            }
            mask[v] = true;
        }
        Ok(mask)
    }

    fn components(&self, mask: &[bool]) -> Vec<Vec<VertexId>> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if !mask[s] || comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            let mut members = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &u in self.rotation(v) {
                    if mask[u] && comp[u] == usize::MAX {
                        comp[u] = id;
                        members.push(u);
                        queue.push_back(u);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Per face: does it lie in a bounded region of the subgraph induced by `mask`?
    pub(crate) fn enclosed_faces(&self, mask: &[bool]) -> Vec<bool> {
        let regions = self.face_regions(|u, v| mask[u] && mask[v]);
        let r0 = regions[self.outer];
        regions.iter().map(|&r| r != r0).collect()
    }

    /// Walk of the unbounded region of the induced subgraph on `mask`,
    /// starting from a dart whose left G-face lies in that region.
    fn outer_walk(&self, mask: &[bool], enclosed: &[bool]) -> Option<Vec<(VertexId, VertexId)>> {
        let start = (0..self.dart_count()).find(|&d| {
            let a = self.dart_origin(d);
            let b = self.dart_target(d);
            mask[a] && mask[b] && !enclosed[self.dart_face[d]]
        })?;
        let start = (self.dart_origin(start), self.dart_target(start));
        let mut walk = Vec::new();
        let (mut a, mut b) = start;
        loop {
            walk.push((a, b));
            let rot = self.rotation(b);
            let mut i = self.rotations.position(b, a).unwrap();
            loop {
                i = (i + rot.len() - 1) % rot.len();
                if mask[rot[i]] {
                    break;
                }
            }
            a = b;
            b = rot[i];
            if (a, b) == start {
                break;
            }
        }
        Some(walk)
    }

    /// Boundary cycles of the unbounded region of the subgraph induced by
    /// `subset`, one per connected component, ordered by smallest member.
    pub fn induced_boundary_cycles(&self, subset: &[VertexId]) -> Result<Vec<BoundaryCycle>, GraphError> {
        let mask = self.subset_mask(subset)?;
        let mut out = Vec::new();
        for comp in self.components(&mask) {
            if comp.len() == 1 {
                out.push(BoundaryCycle { vertices: comp.clone(), b: 0, b0: 1 });
                continue;
            }
            let mut cmask = vec![false; self.n()];
            for &v in &comp {
                cmask[v] = true;
            }
            let enclosed = self.enclosed_faces(&cmask);
            let walk = self.outer_walk(&cmask, &enclosed).expect("component with an edge has a boundary");
            let vertices: Vec<VertexId> = walk.iter().map(|&(a, _)| a).collect();
            let mut distinct = vertices.clone();
            distinct.sort_unstable();
            distinct.dedup();
            out.push(BoundaryCycle { b: vertices.len(), b0: distinct.len(), vertices });
        }
        Ok(out)
    }

    /// Boundary walk (as darts) of a connected induced subgraph around its unbounded region.
    pub(crate) fn subgraph_boundary_darts(&self, mask: &[bool]) -> Vec<(VertexId, VertexId)> {
        let enclosed = self.enclosed_faces(mask);
        self.outer_walk(mask, &enclosed).unwrap_or_default()
    }

    /// Smallest superset of `subset` whose induced subgraph has no holes:
    /// adds every vertex enclosed by a bounded region of the induced subgraph.
    pub fn fill_holes(&self, subset: &[VertexId]) -> Result<Vec<VertexId>, GraphError> {
        let mask = self.subset_mask(subset)?;
        if self.components(&mask).len() != 1 {
            return Err(GraphError::DisconnectedSubset);
        }
        let enclosed = self.enclosed_faces(&mask);
        let mut out: Vec<VertexId> = (0..self.n())
            .filter(|&v| mask[v] || self.darts_of(v).any(|d| enclosed[self.dart_face[d]]))
            .collect();
        out.dedup();
        Ok(out)
    }

    /// Connected, and every bounded region of the induced subgraph is a single face.
    pub fn is_simply_connected(&self, subset: &[VertexId]) -> bool {
        match self.fill_holes(subset) {
            Ok(filled) => {
                let mut s = subset.to_vec();
                s.sort_unstable();
                s.dedup();
                filled == s
            }
            Err(_) => false,
        }
    }
}

/// Cyclic equality of two vertex sequences.
pub fn same_cycle(a: &[VertexId], b: &[VertexId]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..b.len()).any(|s| (0..a.len()).all(|i| a[i] == b[(s + i) % b.len()]))
}

fn walk_matches_hint(walk: &[VertexId], hint: &[VertexId]) -> bool {
    let reversed: Vec<VertexId> = walk.iter().rev().copied().collect();
    same_cycle(&reversed, hint)
}

impl PartialEq for PlaneGraph {
    /// Same combinatorial embedding: equal edge sets, cyclically equal
    /// rotations and the same outer face.
    fn eq(&self, other: &Self) -> bool {
        self.n() == other.n()
            && self.edges == other.edges
            && (0..self.n()).all(|v| same_cycle(self.rotation(v), other.rotation(v)))
            && same_cycle(&self.faces[self.outer].vertices, &other.faces[other.outer].vertices)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Triangle 0,1,2 counter-clockwise.
    pub fn triangle() -> PlaneGraph {
        PlaneGraph::build(3, &[(0, 1), (1, 2), (0, 2)], vec![vec![1, 2], vec![2, 0], vec![0, 1]], &[0, 1, 2])
            .unwrap()
    }

    /// Outer triangle 0,1,2 with vertex 3 inside joined to 0 and 1.
    /// Drawn at (0,0), (4,0), (2,3), (2,1).
    pub fn four_vertex_laman() -> PlaneGraph {
        PlaneGraph::build(
            4,
            &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)],
            vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 1], vec![0, 1]],
            &[0, 1, 2],
        )
        .unwrap()
    }

    /// K4 with vertex 3 inside the outer triangle 0,1,2.
    pub fn k4() -> PlaneGraph {
        PlaneGraph::build(
            4,
            &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)],
            vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]],
            &[0, 1, 2],
        )
        .unwrap()
    }

    /// Wheel: hub 0 at the origin, rim 1..=k counter-clockwise.
    pub fn wheel(k: usize) -> PlaneGraph {
        let mut edges = Vec::new();
        let mut rot = vec![(1..=k).collect::<Vec<_>>()];
        for i in 1..=k {
            let next = if i == k { 1 } else { i + 1 };
            let prev = if i == 1 { k } else { i - 1 };
            edges.push((0, i));
            edges.push((i.min(next), i.max(next)));
            rot.push(vec![next, 0, prev]);
        }
        let hint: Vec<usize> = (1..=k).collect();
        PlaneGraph::build(k + 1, &edges, rot, &hint).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn degrees(g: &PlaneGraph) -> Vec<usize> {
        let mut d: Vec<usize> = g.faces().iter().map(Face::degree).collect();
        d.sort_unstable();
        d
    }

    #[test]
    fn triangle_has_two_faces_of_degree_three() {
        let g = triangle();
        assert_eq!(g.faces().len(), 2);
        assert_eq!(degrees(&g), vec![3, 3]);
        assert!(same_cycle(&g.outer_cycle_ccw(), &[0, 1, 2]));
    }

    #[test]
    fn k4_has_four_triangles_and_outer_triangle() {
        let g = k4();
        assert_eq!(degrees(&g), vec![3, 3, 3, 3]);
        assert!(same_cycle(&g.outer_cycle_ccw(), &[0, 1, 2]));
    }

    #[test]
    fn rotation_missing_an_edge_is_rejected() {
        let err = PlaneGraph::build(3, &[(0, 1), (1, 2), (0, 2)], vec![vec![1], vec![2, 0], vec![0, 1]], &[0, 1, 2])
            .unwrap_err();
        assert!(matches!(err, GraphError::InconsistentRotation { vertex: 0, .. }));
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        assert!(matches!(
            PlaneGraph::build(1, &[], vec![vec![]], &[0]),
            Err(GraphError::DegenerateGraph(_))
        ));
        assert!(matches!(
            PlaneGraph::build(2, &[(0, 0)], vec![vec![0], vec![]], &[0]),
            Err(GraphError::DegenerateGraph(_))
        ));
        assert!(matches!(
            PlaneGraph::build(2, &[(0, 1), (1, 0)], vec![vec![1], vec![0]], &[0, 1]),
            Err(GraphError::DegenerateGraph(_))
        ));
        assert!(matches!(
            PlaneGraph::build(4, &[(0, 1), (2, 3)], vec![vec![1], vec![0], vec![3], vec![2]], &[0, 1]),
            Err(GraphError::Disconnected)
        ));
    }

    #[test]
    fn unknown_outer_face_is_rejected() {
        let err = PlaneGraph::build(3, &[(0, 1), (1, 2), (0, 2)], vec![vec![1, 2], vec![2, 0], vec![0, 1]], &[0, 1])
            .unwrap_err();
        assert_eq!(err, GraphError::OuterFaceNotFound(vec![0, 1]));
    }

    #[test]
    fn non_planar_rotation_is_rejected() {
        // K4 with one rotation flipped has genus 1
        let err = PlaneGraph::build(
            4,
            &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)],
            vec![vec![1, 2, 3], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]],
            &[0, 1, 2],
        )
        .unwrap_err();
        assert!(matches!(err, GraphError::NonPlanarRotation(_)));
    }

    #[test]
    fn four_vertex_example_faces() {
        let g = four_vertex_laman();
        assert_eq!(degrees(&g), vec![3, 3, 4]);
        assert_eq!(g.face(g.outer_face()).degree(), 3);
        let quad = g.faces().iter().find(|f| f.degree() == 4).unwrap();
        assert!(same_cycle(quad.vertices(), &[0, 3, 1, 2]));
        let tri = g
            .faces()
            .iter()
            .enumerate()
            .find(|(i, f)| f.degree() == 3 && *i != g.outer_face())
            .unwrap()
            .1;
        assert!(same_cycle(tri.vertices(), &[0, 1, 3]));
    }

    #[test]
    fn path_has_one_face_walk_of_length_four() {
        let g = PlaneGraph::build(3, &[(0, 1), (1, 2)], vec![vec![1], vec![2, 0], vec![1]], &[0, 1, 2, 1]).unwrap();
        assert_eq!(g.faces().len(), 1);
        assert_eq!(g.face(0).degree(), 4);
    }

    #[test]
    fn every_dart_is_used_exactly_once() {
        for g in [triangle(), four_vertex_laman(), k4(), wheel(6)] {
            let total: usize = g.faces().iter().map(Face::degree).sum();
            assert_eq!(total, 2 * g.m());
            assert_eq!(g.n() as i64 - g.m() as i64 + g.faces().len() as i64, 2);
            for d in 0..g.dart_count() {
                let a = g.angle(d);
                assert_eq!(g.face(a.face).darts()[a.position], d);
            }
        }
    }

    #[test]
    fn boundary_of_whole_k4_is_the_outer_triangle() {
        let g = k4();
        let cycles = g.induced_boundary_cycles(&[0, 1, 2, 3]).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!((cycles[0].b, cycles[0].b0), (3, 3));
        assert!(same_cycle(&cycles[0].vertices, &[0, 2, 1]));
    }

    #[test]
    fn tree_boundary_repeats_every_edge() {
        let g = wheel(6);
        // the hub with three spokes is a star
        let cycles = g.induced_boundary_cycles(&[0, 1, 3, 5]).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].b, 6);
        assert_eq!(cycles[0].b0, 4);
        // a path on the rim
        let cycles = g.induced_boundary_cycles(&[1, 2, 3]).unwrap();
        assert_eq!(cycles[0].b, 4);
    }

    #[test]
    fn two_disjoint_triangles_give_two_cycles() {
        // two nested triangles joined by three spokes; remove the spokes by subset choice
        let g = PlaneGraph::build(
            6,
            &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
            vec![
                vec![1, 3, 2],
                vec![2, 4, 0],
                vec![0, 5, 1],
                vec![4, 5, 0],
                vec![5, 3, 1],
                vec![3, 4, 2],
            ],
            &[0, 1, 2],
        )
        .unwrap();
        let outer_only = g.induced_boundary_cycles(&[0, 1, 2]).unwrap();
        assert_eq!(outer_only.len(), 1);
        assert_eq!(outer_only[0].b, 3);
        assert_eq!(g.fill_holes(&[0, 1, 2]).unwrap(), vec![0, 1, 2, 3, 4, 5]);
        assert!(!g.is_simply_connected(&[0, 1, 2]));
        assert!(g.is_simply_connected(&[3, 4, 5]));
    }

    #[test]
    fn rim_of_wheel_fills_to_include_hub() {
        let g = wheel(5);
        let rim: Vec<usize> = (1..=5).collect();
        assert_eq!(g.fill_holes(&rim).unwrap(), (0..=5).collect::<Vec<_>>());
        let filled = g.fill_holes(&rim).unwrap();
        assert_eq!(g.fill_holes(&filled).unwrap(), filled);
    }

    #[test]
    fn fill_holes_requires_connected_nonempty_subset() {
        let g = wheel(5);
        assert_eq!(g.fill_holes(&[]), Err(GraphError::EmptySubset));
        assert_eq!(g.fill_holes(&[1, 3]), Err(GraphError::DisconnectedSubset));
        assert_eq!(g.fill_holes(&[0, 1]).unwrap(), vec![0, 1]);
    }

    #[test]
    fn equality_ignores_rotation_start() {
        let a = four_vertex_laman();
        let b = PlaneGraph::build(
            4,
            &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)],
            vec![vec![3, 2, 1], vec![0, 2, 3], vec![1, 0], vec![1, 0]],
            &[1, 2, 0],
        )
        .unwrap();
        assert_eq!(a, b);
    }
}
