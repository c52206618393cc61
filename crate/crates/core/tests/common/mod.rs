//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use pseudotri::geom::{orientation, Embedding, Orientation, Point, Provenance};
use pseudotri::henneberg::{insert_into_face, replay};
use pseudotri::incremental::{embed_incremental, FacePolygon, IncrementalConfig};
use pseudotri::io::{generate_sequence, GraphKind};
use pseudotri::plane_graph::{PlaneGraph, RotationSystem, VertexId};
use pseudotri::verify::verify_embedding;

pub fn base() -> [Point; 3] {
    [Point::from_ints(0, 0), Point::from_ints(4, 0), Point::from_ints(2, 3)]
}

/// A generated Laman graph with its incremental embedding.
pub fn embedded(n: usize, seed: u64) -> (PlaneGraph, Embedding) {
    let seq = generate_sequence(n, seed, GraphKind::Laman).unwrap();
    let g = replay(&seq).unwrap();
    let emb = embed_incremental(&seq, &base(), &IncrementalConfig::default()).unwrap();
    (g, emb)
}

/// One placement problem: a face of an embedded graph and the walk positions to join.
pub struct Probe {
    pub rs: RotationSystem,
    pub points: Vec<Point>,
    pub walk: Vec<VertexId>,
    pub anchors: Vec<usize>,
}

impl Probe {
    pub fn polygon(&self) -> FacePolygon {
        FacePolygon { vertices: self.walk.clone(), points: self.walk.iter().map(|&v| self.points[v].clone()).collect() }
    }

    /// Insert a new vertex at `p` and check the whole drawing.
    pub fn global_ok(&self, p: &Point) -> bool {
        let n = self.rs.universe();
        let mut rs = RotationSystem::empty(n + 1);
        for v in 0..n {
            rs.add_vertex(v, self.rs.neighbors(v).to_vec());
        }
        insert_into_face(&mut rs, n, &self.walk, &self.anchors);
        let g = PlaneGraph::from_rotations(rs, (0, 2)).unwrap();
        let mut pts = self.points.clone();
        pts.push(p.clone());
        verify_embedding(&Embedding::new(pts, Provenance::External), &g).pointed_pseudo_triangulation
    }
}

pub fn probes(seeds: std::ops::Range<u64>, n: usize, max_face: usize) -> (Vec<Probe>, Vec<Probe>) {
    let (mut ones, mut twos) = (Vec::new(), Vec::new());
    for seed in seeds {
        let (g, emb) = embedded(n, seed);
        let rs = g.rotation_system().clone();
        for f in g.interior_faces() {
            let walk = g.face(f).vertices().to_vec();
            if walk.len() > max_face {
                continue;
            }
            for i in 0..walk.len() {
                for j in i + 1..walk.len() {
                    ones.push(Probe { rs: rs.clone(), points: emb.points.clone(), walk: walk.clone(), anchors: vec![i, j] });
                }
            }
        }
        for (a, b) in g.edges().iter().copied().filter(|&(a, b)| !(a < 3 && b < 3)) {
            let mut rs = rs.clone();
            let before = rs.predecessor(a, b);
            rs.remove_neighbor(a, b);
            rs.remove_neighbor(b, a);
            let walk = rs.face_walk(a, before);
            if walk.len() > max_face {
                continue;
            }
            let pa = walk.iter().position(|&x| x == a).unwrap();
            let pb = walk.iter().position(|&x| x == b).unwrap();
            for pc in (0..walk.len()).filter(|&k| k != pa && k != pb) {
                let mut anchors = vec![pa, pb, pc];
                anchors.sort_unstable();
                twos.push(Probe { rs: rs.clone(), points: emb.points.clone(), walk: walk.clone(), anchors });
            }
        }
    }
    (ones, twos)
}

/// Stratified jittered samples over the bounding box of the face.
pub fn grid(poly: &FacePolygon, side: u32, rng: &mut SplitMix64) -> Vec<Point> {
    let f: Vec<[f64; 2]> = poly.points.iter().map(Point::to_f64).collect();
    let lo = [f.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min), f.iter().map(|p| p[1]).fold(f64::INFINITY, f64::min)];
    let hi = [f.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max), f.iter().map(|p| p[1]).fold(f64::NEG_INFINITY, f64::max)];
    let mut out = Vec::with_capacity((side * side) as usize);
    for i in 0..side {
        for j in 0..side {
            let u = (f64::from(i) + rng.random::<f64>()) / f64::from(side);
            let v = (f64::from(j) + rng.random::<f64>()) / f64::from(side);
            out.push(Point::from_f64(lo[0] + u * (hi[0] - lo[0]), lo[1] + v * (hi[1] - lo[1])).unwrap());
        }
    }
    out
}

/// On a line through an anchor and another face vertex, or on a face edge line.
pub fn on_arrangement_line(poly: &FacePolygon, anchors: &[usize], p: &Point) -> bool {
    let k = poly.len();
    let edge = (0..k).any(|i| orientation(&poly.points[i], &poly.points[(i + 1) % k], p) == Orientation::Collinear);
    edge || anchors.iter().any(|&a| {
        (0..k).any(|j| poly.points[j] != poly.points[a] && orientation(&poly.points[a], &poly.points[j], p) == Orientation::Collinear)
    })
}

pub fn pick(mut all: Vec<Probe>, count: usize, seed: u64) -> Vec<Probe> {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count && !all.is_empty() {
        let i = rng.random_range(0..all.len());
        out.push(all.swap_remove(i));
    }
    out
}
