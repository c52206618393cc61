//! Vertex/face-copy bipartite graph and maximum matching.

use std::collections::VecDeque;

use crate::plane_graph::{FaceId, PlaneGraph, VertexId};

use super::CptError;

/// Left side: graph vertices. Right side: copies of faces, `d_f - 3` per
/// interior face and `h` for the outer face. A vertex is adjacent to every
/// copy of every face it lies on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingGraph {
    pub left: Vec<VertexId>,
    /// `(face, copy index)` per right node, grouped by face.
    pub right: Vec<(FaceId, usize)>,
    pub adj: Vec<Vec<usize>>,
}

impl MatchingGraph {
    pub fn multiplicity(&self, f: FaceId) -> usize {
        self.right.iter().filter(|&&(g, _)| g == f).count()
    }
}

pub fn build_matching_graph(g: &PlaneGraph, prescribed: Option<VertexId>) -> Result<MatchingGraph, CptError> {
    let (n, m) = (g.n(), g.m());
    match prescribed {
        None if m != 2 * n - 3 => return Err(CptError::BadEdgeCount { n, m, expected: 2 * n - 3 }),
        Some(_) if m != 2 * n - 2 => return Err(CptError::BadEdgeCount { n, m, expected: 2 * n - 2 }),
        Some(p) if p >= n => return Err(CptError::VertexOutOfRange(p)),
        Some(p) if g.face(g.outer_face()).vertices().contains(&p) => {
            return Err(CptError::PrescribedVertexOnOuterFace(p))
        }
        _ => {}
    }
    let mut right = Vec::new();
    let mut first_copy = vec![0; g.faces().len()];
    for (f, face) in g.faces().iter().enumerate() {
        first_copy[f] = right.len();
        let copies = if f == g.outer_face() { face.degree() } else { face.degree().saturating_sub(3) };
        right.extend((0..copies).map(|c| (f, c)));
    }
    first_copy.push(right.len());
    let left: Vec<VertexId> = (0..n).filter(|&v| Some(v) != prescribed).collect();
    let adj = left
        .iter()
        .map(|&v| {
            let mut faces: Vec<FaceId> = g.angles_at(v).map(|a| a.face).collect();
            faces.sort_unstable();
            faces.dedup();
            faces.into_iter().flat_map(|f| first_copy[f]..first_copy[f + 1]).collect()
        })
        .collect();
    Ok(MatchingGraph { left, right, adj })
}

/// Hopcroft-Karp maximum matching; returns the right partner of each left node.
pub fn maximum_matching(adj: &[Vec<usize>], n_right: usize) -> Vec<Option<usize>> {
    const INF: usize = usize::MAX;
    let n_left = adj.len();
    let mut mate_l: Vec<Option<usize>> = vec![None; n_left];
    let mut mate_r: Vec<Option<usize>> = vec![None; n_right];
    let mut dist = vec![INF; n_left];

    fn dfs(
        u: usize,
        adj: &[Vec<usize>],
        mate_l: &mut [Option<usize>],
        mate_r: &mut [Option<usize>],
        dist: &mut [usize],
        next: &mut [usize],
    ) -> bool {
        while next[u] < adj[u].len() {
            let w = adj[u][next[u]];
            next[u] += 1;
            let ok = match mate_r[w] {
                None => true,
                Some(x) => dist[x] == dist[u] + 1 && dfs(x, adj, mate_l, mate_r, dist, next),
            };
            if ok {
                mate_l[u] = Some(w);
                mate_r[w] = Some(u);
                return true;
            }
        }
        dist[u] = usize::MAX;
        false
    }

    loop {
        let mut queue = VecDeque::new();
        for u in 0..n_left {
            if mate_l[u].is_none() {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = INF;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                match mate_r[w] {
                    None => found = true,
                    Some(x) if dist[x] == INF => {
                        dist[x] = dist[u] + 1;
                        queue.push_back(x);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            break;
        }
        let mut next = vec![0; n_left];
        let mut grew = false;
        for u in 0..n_left {
            if mate_l[u].is_none() && dfs(u, adj, &mut mate_l, &mut mate_r, &mut dist, &mut next) {
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    mate_l
}

/// Every perfect matching, as the right partner of each left node.
/// Exhaustive backtracking; only for small test instances.
pub fn enumerate_perfect_matchings(h: &MatchingGraph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if h.left.len() != h.right.len() {
        return out;
    }
    let mut used = vec![false; h.right.len()];
    let mut current = Vec::with_capacity(h.left.len());
    fn rec(i: usize, h: &MatchingGraph, used: &mut [bool], current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == h.left.len() {
            out.push(current.clone());
            return;
        }
        for &w in &h.adj[i] {
            if !used[w] {
                used[w] = true;
                current.push(w);
                rec(i + 1, h, used, current, out);
                current.pop();
                used[w] = false;
            }
        }
    }
    rec(0, h, &mut used, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane_graph::fixtures::*;

    #[test]
    fn right_side_sizes() {
        let h = build_matching_graph(&triangle(), None).unwrap();
        assert_eq!(h.right.len(), 3);
        let g = four_vertex_laman();
        let h = build_matching_graph(&g, None).unwrap();
        assert_eq!(h.right.len(), 4);
        assert_eq!(h.right.len(), h.left.len());
    }

    #[test]
    fn edge_count_and_prescription_checks() {
        assert!(matches!(build_matching_graph(&k4(), None), Err(CptError::BadEdgeCount { .. })));
        assert_eq!(build_matching_graph(&k4(), Some(0)), Err(CptError::PrescribedVertexOnOuterFace(0)));
        let h = build_matching_graph(&k4(), Some(3)).unwrap();
        assert_eq!(h.left, vec![0, 1, 2]);
        assert_eq!(h.right.len(), 3);
    }

    #[test]
    fn hopcroft_karp_finds_maximum() {
        // path structure forcing an augmenting path
        let adj = vec![vec![0, 1], vec![0], vec![1, 2]];
        let m = maximum_matching(&adj, 3);
        assert!(m.iter().all(Option::is_some));
        let adj = vec![vec![0], vec![0], vec![1]];
        assert_eq!(maximum_matching(&adj, 2).iter().filter(|x| x.is_some()).count(), 2);
    }

    #[test]
    fn four_vertex_matchings_are_forced_up_to_copies() {
        let g = four_vertex_laman();
        let h = build_matching_graph(&g, None).unwrap();
        // outer face has 3 copies permuted among 0, 1, 2; vertex 3 takes the quad
        assert_eq!(enumerate_perfect_matchings(&h).len(), 6);
    }
}
