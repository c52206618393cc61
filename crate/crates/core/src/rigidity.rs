//! Combinatorial rigidity via the (2,3) pebble game.

use thiserror::Error;

/// Simple undirected graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Self {
        Graph { n, edges }
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph { n, edges }
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    pub fn without_edge(&self, i: usize) -> Graph {
        let mut edges = self.edges.clone();
        edges.remove(i);
        Graph { n: self.n, edges }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RigidityError {
    #[error("graph is not independent: some {k}-vertex subset spans more than {} edges", 2 * k - 3)]
    NotIndependent { k: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RigidityClass {
    Laman,
    /// Laman plus one edge; carries the unique circuit.
    LamanPlusOne { vertices: Vec<usize>, edges: Vec<(usize, usize)> },
    /// Laman plus one edge where the circuit is the whole graph.
    Circuit,
    /// Independent with fewer than `2n - 3` edges.
    Flexible,
    /// Dependent and not Laman plus one.
    Overbraced,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidComponent {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

/// Pebble game state: each vertex starts with two pebbles, each accepted
/// edge is directed away from the vertex whose pebble covers it.
struct PebbleGame {
    pebbles: Vec<u8>,
    out: Vec<Vec<usize>>,
    accepted: Vec<(usize, usize)>,
    rejected: Vec<(usize, usize)>,
    // scratch
    mark: Vec<u32>,
    stamp: u32,
    parent: Vec<usize>,
}

impl PebbleGame {
    fn new(n: usize) -> Self {
        PebbleGame {
            pebbles: vec![2; n],
            out: vec![Vec::new(); n],
            accepted: Vec::new(),
            rejected: Vec::new(),
            mark: vec![0; n],
            stamp: 0,
            parent: vec![usize::MAX; n],
        }
    }

    fn next_stamp(&mut self) -> u32 {
        self.stamp += 1;
        self.stamp
    }

    /// Move one free pebble to `root`; pebbles on `blocked` stay put.
    fn find_pebble(&mut self, root: usize, blocked: &[usize]) -> bool {
        let s = self.next_stamp();
        self.mark[root] = s;
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            for i in 0..self.out[x].len() {
                let y = self.out[x][i];
                if self.mark[y] == s {
                    continue;
                }
                self.mark[y] = s;
                self.parent[y] = x;
                if self.pebbles[y] > 0 && !blocked.contains(&y) {
                    self.pebbles[y] -= 1;
                    self.pebbles[root] += 1;
                    let mut cur = y;
                    while cur != root {
                        let p = self.parent[cur];
                        let pos = self.out[p].iter().position(|&t| t == cur).unwrap();
                        self.out[p].swap_remove(pos);
                        self.out[cur].push(p);
                        cur = p;
                    }
                    return true;
                }
                stack.push(y);
            }
        }
        false
    }

    /// Collect as many pebbles as possible on `u` and `v`; returns the total.
    fn gather(&mut self, u: usize, v: usize) -> u8 {
        while self.pebbles[u] < 2 && self.find_pebble(u, &[v]) {}
        while self.pebbles[v] < 2 && self.find_pebble(v, &[u]) {}
        self.pebbles[u] + self.pebbles[v]
    }

    fn insert(&mut self, u: usize, v: usize) -> bool {
        if self.gather(u, v) >= 4 {
            self.pebbles[u] -= 1;
            self.out[u].push(v);
            self.accepted.push((u, v));
            true
        } else {
            self.rejected.push((u, v));
            false
        }
    }

    /// Vertices reachable from `u` or `v` along directed accepted edges.
    fn reach(&mut self, roots: &[usize]) -> Vec<usize> {
        let s = self.next_stamp();
        let mut stack = Vec::new();
        let mut out = Vec::new();
        for &r in roots {
            if self.mark[r] != s {
                self.mark[r] = s;
                stack.push(r);
                out.push(r);
            }
        }
        while let Some(x) = stack.pop() {
            for i in 0..self.out[x].len() {
                let y = self.out[x][i];
                if self.mark[y] != s {
                    self.mark[y] = s;
                    stack.push(y);
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn play(g: &Graph) -> Self {
        let mut game = PebbleGame::new(g.n);
        for &(u, v) in &g.edges {
            game.insert(u, v);
        }
        game
    }
}

/// Pebble game kept alive across edge insertions and deletions, for
/// step-by-step reductions of an independent graph.
pub(crate) struct IndependenceTracker(PebbleGame);

impl IndependenceTracker {
    pub fn new(n: usize) -> Self {
        IndependenceTracker(PebbleGame::new(n))
    }

    /// Insert `u - v` if it keeps the edge set independent.
    pub fn try_insert(&mut self, u: usize, v: usize) -> bool {
        if self.0.insert(u, v) {
            true
        } else {
            self.0.rejected.pop();
            false
        }
    }

    /// Would `u - v` keep the edge set independent?
    pub fn can_insert(&mut self, u: usize, v: usize) -> bool {
        u != v && self.0.gather(u, v) >= 4
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        let g = &mut self.0;
        if let Some(i) = g.out[u].iter().position(|&t| t == v) {
            g.out[u].swap_remove(i);
            g.pebbles[u] += 1;
        } else if let Some(i) = g.out[v].iter().position(|&t| t == u) {
            g.out[v].swap_remove(i);
            g.pebbles[v] += 1;
        } else {
            panic!("remove_edge: {u}-{v} not tracked");
        }
    }
}

fn canon(e: (usize, usize)) -> (usize, usize) {
    (e.0.min(e.1), e.0.max(e.1))
}

/// True iff `m = 2n - 3` and every `k`-subset with `k >= 2` spans at most `2k - 3` edges.
pub fn is_laman(g: &Graph) -> bool {
    if g.n < 2 || g.m() != 2 * g.n - 3 {
        return false;
    }
    let mut game = PebbleGame::new(g.n);
    g.edges.iter().all(|&(u, v)| u != v && game.insert(u, v))
}

/// Is every subset of at least two vertices within the `2k - 3` count?
pub fn is_independent(g: &Graph) -> bool {
    let game = PebbleGame::play(g);
    game.rejected.is_empty()
}

/// Rank of the generic 2D rigidity matroid restricted to the edges.
pub fn rank(g: &Graph) -> usize {
    PebbleGame::play(g).accepted.len()
}

pub fn classify(g: &Graph) -> RigidityClass {
    if g.n < 2 {
        return if g.m() == 0 { RigidityClass::Flexible } else { RigidityClass::Overbraced };
    }
    let mut game = PebbleGame::play(g);
    let full = 2 * g.n - 3;
    if game.rejected.is_empty() {
        return if g.m() == full { RigidityClass::Laman } else { RigidityClass::Flexible };
    }
    if game.rejected.len() != 1 || game.accepted.len() != full {
        return RigidityClass::Overbraced;
    }
    let (u, v) = game.rejected[0];
    // Redo the gather so that the reach set is the minimal tight set spanning u, v.
    game.gather(u, v);
    let verts = game.reach(&[u, v]);
    let mut inside = vec![false; g.n];
    for &w in &verts {
        inside[w] = true;
    }
    let mut edges: Vec<(usize, usize)> =
        g.edges.iter().copied().filter(|&(a, b)| inside[a] && inside[b]).map(canon).collect();
    edges.sort_unstable();
    debug_assert_eq!(edges.len(), 2 * verts.len() - 2, "circuit counts");
    if edges.len() == g.m() && verts.len() == g.n {
        RigidityClass::Circuit
    } else {
        RigidityClass::LamanPlusOne { vertices: verts, edges }
    }
}

/// Maximal rigid subgraphs of an independent graph, sorted by smallest member.
///
/// Isolated vertices belong to no component.
pub fn rigid_components(g: &Graph) -> Result<Vec<RigidComponent>, RigidityError> {
    let mut game = PebbleGame::play(g);
    if let Some(&(u, v)) = game.rejected.first() {
        game.gather(u, v);
        let k = game.reach(&[u, v]).len();
        return Err(RigidityError::NotIndependent { k });
    }
    let n = g.n;
    let mut covered = vec![false; g.m()];
    let mut out = Vec::new();
    let edges: Vec<(usize, usize)> = game.accepted.clone();
    let edge_index = |a: usize, b: usize| g.edges.iter().position(|&e| canon(e) == canon((a, b)));
    for &(u, v) in &edges {
        if covered[edge_index(u, v).unwrap()] {
            continue;
        }
        game.gather(u, v);
        let mut inside = vec![false; n];
        inside[u] = true;
        inside[v] = true;
        let mut decided = vec![false; n];
        decided[u] = true;
        decided[v] = true;
        for w in 0..n {
            if decided[w] {
                continue;
            }
            // w is rigidly attached iff no free pebble other than the pinned
            // ones on u, v is reachable from it.
            let s = game.next_stamp();
            game.mark[w] = s;
            let mut stack = vec![w];
            let mut seen = vec![w];
            let mut free = game.pebbles[w] > 0;
            while let Some(x) = stack.pop() {
                if free {
                    break;
                }
                for &y in &game.out[x] {
                    if game.mark[y] == s {
                        continue;
                    }
                    game.mark[y] = s;
                    if game.pebbles[y] > 0 && y != u && y != v {
                        free = true;
                        break;
                    }
                    stack.push(y);
                    seen.push(y);
                }
            }
            if !free {
                for &x in &seen {
                    inside[x] = true;
                    decided[x] = true;
                }
            }
            decided[w] = true;
        }
        let vertices: Vec<usize> = (0..n).filter(|&x| inside[x]).collect();
        let mut comp_edges = Vec::new();
        for (i, &(a, b)) in g.edges.iter().enumerate() {
            if inside[a] && inside[b] {
                covered[i] = true;
                comp_edges.push(canon((a, b)));
            }
        }
        comp_edges.sort_unstable();
        out.push(RigidComponent { vertices, edges: comp_edges });
    }
    out.sort_by_key(|c| c.vertices[0]);
    Ok(out)
}

/// Subset-enumeration oracle; only for testing, `n <= 20`.
pub fn brute_force_is_laman(g: &Graph) -> bool {
    assert!(g.n <= 20, "brute force oracle limited to 20 vertices");
    if g.n < 2 || g.m() != 2 * g.n - 3 {
        return false;
    }
    brute_force_independent(g)
}

/// Subset-enumeration check of the `2k - 3` count for every subset of size at least 2.
pub fn brute_force_independent(g: &Graph) -> bool {
    assert!(g.n <= 20, "brute force oracle limited to 20 vertices");
    let mut adj = vec![0u32; g.n];
    for &(u, v) in &g.edges {
        if u == v || adj[u] & (1 << v) != 0 {
            return false;
        }
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    for s in 1u32..(1 << g.n) {
        let k = s.count_ones() as usize;
        if k < 2 {
            continue;
        }
        let mut twice = 0;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            twice += (adj[v] & s).count_ones() as usize;
        }
        if twice / 2 > 2 * k - 3 {
            return false;
        }
    }
    true
}

/// All maximal subsets of `k >= 2` vertices spanning exactly `2k - 3`
/// edges, by subset enumeration. Testing oracle for [`rigid_components`].
pub fn brute_force_rigid_components(g: &Graph) -> Vec<Vec<usize>> {
    assert!(g.n <= 16, "brute force oracle limited to 16 vertices");
    let mut adj = vec![0u32; g.n];
    for &(u, v) in &g.edges {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    let spans = |s: u32| -> usize {
        let mut twice = 0;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            twice += (adj[v] & s).count_ones() as usize;
        }
        twice / 2
    };
    let tight: Vec<u32> = (1u32..(1 << g.n))
        .filter(|&s| {
            let k = s.count_ones() as usize;
            k >= 2 && spans(s) == 2 * k - 3
        })
        .collect();
    let mut out: Vec<Vec<usize>> = tight
        .iter()
        .filter(|&&s| !tight.iter().any(|&t| t != s && t & s == s))
        .map(|&s| (0..g.n).filter(|&v| s & (1 << v) != 0).collect())
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k33() -> Graph {
        let mut edges = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                edges.push((a, b));
            }
        }
        Graph::new(6, edges)
    }

    #[test]
    fn laman_examples() {
        assert!(is_laman(&Graph::complete(3)));
        assert!(is_laman(&k33()));
        assert!(!is_laman(&Graph::complete(4)));
        for g in [Graph::complete(3), k33(), Graph::complete(4)] {
            assert_eq!(is_laman(&g), brute_force_is_laman(&g));
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&Graph::complete(3)), RigidityClass::Laman);
        assert_eq!(classify(&Graph::complete(4)), RigidityClass::Circuit);
        let mut g = Graph::complete(4);
        g.n = 5;
        g.edges.push((0, 4));
        g.edges.push((1, 4));
        assert_eq!(
            classify(&g),
            RigidityClass::LamanPlusOne { vertices: vec![0, 1, 2, 3], edges: Graph::complete(4).edges }
        );
        assert_eq!(classify(&Graph::new(3, vec![(0, 1)])), RigidityClass::Flexible);
        assert_eq!(classify(&Graph::complete(5)), RigidityClass::Overbraced);
    }

    #[test]
    fn component_examples() {
        let bowtie = Graph::new(5, vec![(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]);
        let comps = rigid_components(&bowtie).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].vertices, vec![0, 1, 2]);
        assert_eq!(comps[1].vertices, vec![2, 3, 4]);

        let edge = Graph::new(2, vec![(0, 1)]);
        assert_eq!(rigid_components(&edge).unwrap()[0].vertices, vec![0, 1]);

        let pendant = Graph::new(4, vec![(0, 1), (1, 2), (0, 2), (2, 3)]);
        let comps: Vec<Vec<usize>> = rigid_components(&pendant).unwrap().into_iter().map(|c| c.vertices).collect();
        assert_eq!(comps, brute_force_rigid_components(&pendant));
        assert_eq!(comps, vec![vec![0, 1, 2], vec![2, 3]]);

        assert!(matches!(rigid_components(&Graph::complete(4)), Err(RigidityError::NotIndependent { k: 4 })));
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (2..=max_n).prop_flat_map(|n| {
            let all = Graph::complete(n).edges;
            let len = all.len();
            proptest::sample::subsequence(all, 0..=len).prop_map(move |e| Graph::new(n, e))
        })
    }

    proptest! {
        #[test]
        fn pebble_game_agrees_with_subset_counts(g in arb_graph(8)) {
            prop_assert_eq!(is_laman(&g), brute_force_is_laman(&g));
            prop_assert_eq!(is_independent(&g), brute_force_independent(&g));
        }

        #[test]
        fn components_match_oracle(g in arb_graph(8)) {
            if is_independent(&g) {
                let comps = rigid_components(&g).unwrap();
                for c in &comps {
                    prop_assert_eq!(c.edges.len(), 2 * c.vertices.len() - 3);
                }
                for (i, a) in comps.iter().enumerate() {
                    for b in &comps[i + 1..] {
                        let shared = a.vertices.iter().filter(|v| b.vertices.contains(v)).count();
                        prop_assert!(shared <= 1);
                    }
                }
                let mut got: Vec<Vec<usize>> = comps.into_iter().map(|c| c.vertices).collect();
                got.sort();
                prop_assert_eq!(got, brute_force_rigid_components(&g));
            }
        }

        #[test]
        fn circuits_are_minimally_dependent(g in arb_graph(8)) {
            match classify(&g) {
                RigidityClass::Circuit => {
                    prop_assert_eq!(g.m(), 2 * g.n - 2);
                    prop_assert!(g.degrees().iter().all(|&d| d >= 3));
                    for i in 0..g.m() {
                        prop_assert!(is_laman(&g.without_edge(i)));
                    }
                }
                RigidityClass::LamanPlusOne { vertices, edges } => {
                    prop_assert_eq!(edges.len(), 2 * vertices.len() - 2);
                    let idx: Vec<usize> = (0..g.n).map(|v| vertices.iter().position(|&x| x == v).unwrap_or(usize::MAX)).collect();
                    let sub = Graph::new(vertices.len(), edges.iter().map(|&(a, b)| (idx[a], idx[b])).collect());
                    prop_assert_eq!(classify(&sub), RigidityClass::Circuit);
                }
                RigidityClass::Laman => {
                    let d = g.degrees();
                    prop_assert!(d.iter().filter(|&&x| x <= 3).count() >= 3.min(g.n));
                }
                _ => {}
            }
        }
    }
}
