//! Corners of induced subgraphs of a labeled plane graph.

use crate::plane_graph::{PlaneGraph, VertexId};

use super::{CptError, CptLabeling};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgraphCornerStats {
    pub m: usize,
    /// Pointed vertices of the subset (pointedness taken in the whole graph).
    pub k: usize,
    pub l: usize,
    /// Length of the boundary walk.
    pub b: usize,
    /// Distinct vertices on the boundary walk.
    pub b0: usize,
    /// Pointed vertices whose big angle lies outside the subgraph, counted directly.
    pub c1: usize,
    /// `m + 3 - 2k - 3l + b`.
    pub c1_formula: i64,
    /// Non-pointed vertices with two consecutive small angles outside.
    pub c2: usize,
    /// Edges traversed twice by the boundary walk.
    pub doubled_edges: usize,
}

impl SubgraphCornerStats {
    pub fn corners(&self) -> usize {
        self.c1 + self.c2
    }
}

fn mask_of(g: &PlaneGraph, subset: &[VertexId]) -> Result<Vec<bool>, CptError> {
    let mut mask = vec![false; g.n()];
    for &v in subset {
        if v >= g.n() {
            return Err(CptError::VertexOutOfRange(v));
        }
        mask[v] = true;
    }
    Ok(mask)
}

/// Corner statistics of the subgraph induced by a connected hole-free subset.
pub fn corner_stats(g: &PlaneGraph, lab: &CptLabeling, subset: &[VertexId]) -> Result<SubgraphCornerStats, CptError> {
    if lab.len() != g.dart_count() {
        return Err(CptError::SizeMismatch { got: lab.len(), expected: g.dart_count() });
    }
    let mask = mask_of(g, subset)?;
    if subset.is_empty() || !g.is_simply_connected(subset) {
        return Err(CptError::NotSimplyConnected);
    }
    let members: Vec<VertexId> = (0..g.n()).filter(|&v| mask[v]).collect();
    let m = g.edges().iter().filter(|&&(u, v)| mask[u] && mask[v]).count();
    let k = members.iter().filter(|&&v| lab.is_pointed(g, v)).count();
    let l = members.len() - k;
    let cycle = g.induced_boundary_cycles(&members).map_err(|_| CptError::NotSimplyConnected)?.remove(0);
    let enclosed = g.enclosed_faces(&mask);
    let mut c1 = 0;
    let mut c2 = 0;
    for &v in &members {
        if let Some(d) = lab.big_angle_at(g, v) {
            if !enclosed[g.dart_face(d)] {
                c1 += 1;
            }
        } else if !lab.is_pointed(g, v) && has_wide_outer_angle(g, &mask, &enclosed, v) {
            c2 += 1;
        }
    }
    let darts = g.subgraph_boundary_darts(&mask);
    let mut undirected: Vec<(VertexId, VertexId)> = darts.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    undirected.sort_unstable();
    let doubled = undirected.windows(2).filter(|w| w[0] == w[1]).count();
    Ok(SubgraphCornerStats {
        m,
        k,
        l,
        b: cycle.b,
        b0: cycle.b0,
        c1,
        c1_formula: m as i64 + 3 - 2 * k as i64 - 3 * l as i64 + cycle.b as i64,
        c2,
        doubled_edges: doubled,
    })
}

/// Does some angle of the induced subgraph at `v`, lying in its unbounded
/// region, consist of two or more angles of the whole graph?
fn has_wide_outer_angle(g: &PlaneGraph, mask: &[bool], enclosed: &[bool], v: VertexId) -> bool {
    let rot = g.rotation(v);
    let deg = rot.len();
    let darts: Vec<usize> = g.darts_of(v).collect();
    let Some(start) = (0..deg).find(|&j| mask[rot[j]]) else {
        // isolated in the subgraph: one angle made of all of them
        return deg >= 2;
    };
    let mut run = 0;
    for step in 0..deg {
        let j = (start + step) % deg;
        run += 1;
        if mask[rot[(j + 1) % deg]] {
            if run >= 2 && !enclosed[g.dart_face(darts[j])] {
                return true;
            }
            run = 0;
        }
    }
    false
}

/// All connected hole-free vertex subsets with at least `min_size` vertices,
/// as sorted vertex lists. Exhaustive over bitmasks; `n <= 24`.
pub fn connected_hole_free_subsets(g: &PlaneGraph, min_size: usize) -> Vec<Vec<VertexId>> {
    let n = g.n();
    assert!(n <= 24, "subset enumeration limited to 24 vertices");
    let mut adj = vec![0u32; n];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let mut out = Vec::new();
    for s in 1u32..(1u32 << n) {
        if (s.count_ones() as usize) < min_size.max(1) {
            continue;
        }
        let mut seen = 1u32 << s.trailing_zeros();
        loop {
            let mut grow = seen;
            let mut rest = seen;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                grow |= adj[v] & s;
            }
            if grow == seen {
                break;
            }
            seen = grow;
        }
        if seen != s {
            continue;
        }
        let members: Vec<VertexId> = (0..n).filter(|&v| s & (1 << v) != 0).collect();
        if g.is_simply_connected(&members) {
            out.push(members);
        }
    }
    out
}

/// True iff every connected hole-free subgraph with at least three vertices
/// has at least three corners of either type.
pub fn check_all_subgraph_corners(g: &PlaneGraph, lab: &CptLabeling, n_limit: usize) -> Result<bool, CptError> {
    Ok(find_corner_deficient_subset(g, lab, n_limit)?.is_none())
}

/// A connected hole-free subset with at least three vertices but fewer than
/// three corners, if one exists.
pub fn find_corner_deficient_subset(
    g: &PlaneGraph,
    lab: &CptLabeling,
    n_limit: usize,
) -> Result<Option<Vec<VertexId>>, CptError> {
    if g.n() > n_limit {
        return Err(CptError::TooLarge { n: g.n(), limit: n_limit });
    }
    for s in connected_hole_free_subsets(g, 3) {
        let stats = corner_stats(g, lab, &s)?;
        if stats.corners() < 3 {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpt::assign_cpt;
    use crate::plane_graph::fixtures::*;

    #[test]
    fn whole_four_vertex_example() {
        let g = four_vertex_laman();
        let lab = assign_cpt(&g, None).unwrap();
        let s = corner_stats(&g, &lab, &[0, 1, 2, 3]).unwrap();
        assert_eq!((s.m, s.k, s.l, s.b), (5, 4, 0, 3));
        assert_eq!(s.c1, 3);
        assert_eq!(s.c1_formula, 3);
    }

    #[test]
    fn single_triangle_face_has_three_corners() {
        let g = four_vertex_laman();
        let lab = assign_cpt(&g, None).unwrap();
        let s = corner_stats(&g, &lab, &[0, 1, 3]).unwrap();
        assert_eq!((s.m, s.k, s.l, s.b), (3, 3, 0, 3));
        assert_eq!(s.c1 as i64, s.c1_formula);
        assert_eq!(s.c1, 3);
    }

    #[test]
    fn isolated_vertex_and_edge() {
        let g = four_vertex_laman();
        let lab = assign_cpt(&g, None).unwrap();
        let s = corner_stats(&g, &lab, &[3]).unwrap();
        assert_eq!((s.b, s.c1, s.c1_formula), (0, 1, 1));
        let s = corner_stats(&g, &lab, &[0, 3]).unwrap();
        assert_eq!((s.b, s.doubled_edges), (2, 1));
        assert_eq!(s.c1 as i64, s.c1_formula);
    }

    #[test]
    fn circuit_center_is_a_type_two_corner() {
        let g = k4();
        let lab = assign_cpt(&g, Some(3)).unwrap();
        // triangle 0, 1, 3: the centre sees two small angles outside it
        let s = corner_stats(&g, &lab, &[0, 1, 3]).unwrap();
        assert_eq!((s.l, s.c1, s.c2), (1, 2, 1));
        assert_eq!(s.c1 as i64, s.c1_formula);
        assert!(check_all_subgraph_corners(&g, &lab, 12).unwrap());
    }

    #[test]
    fn rejects_holes_and_large_inputs() {
        let g = wheel(5);
        let lab = CptLabeling::all_small(&g);
        assert_eq!(corner_stats(&g, &lab, &[1, 2, 3, 4, 5]), Err(CptError::NotSimplyConnected));
        assert_eq!(corner_stats(&g, &lab, &[1, 3]), Err(CptError::NotSimplyConnected));
        assert_eq!(check_all_subgraph_corners(&g, &lab, 4), Err(CptError::TooLarge { n: 6, limit: 4 }));
    }
}
