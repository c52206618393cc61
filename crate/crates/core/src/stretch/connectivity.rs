//! Vertex-disjoint directed paths from interior vertices to the boundary.

use std::collections::VecDeque;

use crate::plane_graph::VertexId;

use super::AuxDigraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundaryConnectivity {
    ThreeConnected,
    /// Every directed path from `vertex` to the boundary meets `cut`.
    Separated { vertex: VertexId, cut: Vec<VertexId> },
}

impl BoundaryConnectivity {
    pub fn is_connected(&self) -> bool {
        matches!(self, BoundaryConnectivity::ThreeConnected)
    }
}

struct FlowNet {
    head: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<u8>,
    next: Vec<usize>,
}

const NONE: usize = usize::MAX;
/// Exceeds any flow value the search asks for.
const UNBOUNDED: u8 = 4;

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet { head: vec![NONE; nodes], to: Vec::new(), cap: Vec::new(), next: Vec::new() }
    }

    fn add(&mut self, a: usize, b: usize, c: u8) {
        for (x, y, c) in [(a, b, c), (b, a, 0)] {
            self.to.push(y);
            self.cap.push(c);
            self.next.push(self.head[x]);
            self.head[x] = self.to.len() - 1;
        }
    }

    /// One augmenting path by BFS; the edges it used are appended to `touched`.
    fn augment(&mut self, s: usize, t: usize, pred: &mut [usize], touched: &mut Vec<usize>) -> bool {
        pred.fill(NONE);
        let mut queue = VecDeque::from([s]);
        pred[s] = NONE - 1;
        while let Some(x) = queue.pop_front() {
            let mut e = self.head[x];
            while e != NONE {
                let y = self.to[e];
                if self.cap[e] > 0 && pred[y] == NONE {
                    pred[y] = e;
                    if y == t {
                        let mut z = t;
                        while z != s {
                            let e = pred[z];
                            self.cap[e] -= 1;
                            self.cap[e ^ 1] += 1;
                            touched.push(e);
                            z = self.to[e ^ 1];
                        }
                        return true;
                    }
                    queue.push_back(y);
                }
                e = self.next[e];
            }
        }
        false
    }
}

/// For every interior vertex, look for three vertex-disjoint directed paths
/// ending at three distinct boundary vertices (unit vertex capacities, max
/// flow to a super-sink). Reports the first vertex that fails with a
/// minimum separating vertex set.
pub fn check_boundary_3connectivity(aux: &AuxDigraph) -> BoundaryConnectivity {
    let n = aux.n();
    let on_boundary = aux.on_boundary();
    // vertex x splits into x_in = 2x and x_out = 2x + 1 joined by a unit edge; sink is 2n
    let sink = 2 * n;
    let mut net = FlowNet::new(2 * n + 1);
    let mut split_edge = vec![0; n];
    for x in 0..n {
        split_edge[x] = net.to.len();
        net.add(2 * x, 2 * x + 1, 1);
    }
    for x in 0..n {
        for &(y, _) in &aux.out[x] {
            net.add(2 * x + 1, 2 * y, UNBOUNDED);
        }
        if on_boundary[x] {
            net.add(2 * x + 1, sink, UNBOUNDED);
        }
    }
    let original = net.cap.clone();
    let mut pred = vec![NONE; 2 * n + 1];
    let mut touched = Vec::new();
    for v in 0..n {
        if on_boundary[v] {
            continue;
        }
        let source = 2 * v + 1;
        let mut flow = 0;
        while flow < 3 && net.augment(source, sink, &mut pred, &mut touched) {
            flow += 1;
        }
        if flow < 3 {
            // reachable side of the residual network after the last failed search
            let reach = |x: usize| pred[x] != NONE || x == source;
            let cut: Vec<VertexId> =
                (0..n).filter(|&x| x != v && reach(2 * x) && !reach(2 * x + 1)).collect();
            debug_assert!(cut.iter().all(|&x| net.cap[split_edge[x]] == 0));
            return BoundaryConnectivity::Separated { vertex: v, cut };
        }
        for e in touched.drain(..) {
            net.cap[e] = original[e];
            net.cap[e ^ 1] = original[e ^ 1];
        }
    }
    BoundaryConnectivity::ThreeConnected
}
