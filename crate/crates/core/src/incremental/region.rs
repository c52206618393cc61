//! Where a new vertex may go inside a face so that the drawing stays a
//! pointed pseudo-triangulation.
//!
//! The constraints are: strictly inside the face, a clear view of every
//! anchor, every reflex anchor keeping a reflex angle (the new edge is
//! tangent there), and the new vertex itself pointed. All their boundaries
//! lie on lines through two face vertices, so cutting the face by those
//! lines gives convex cells on which feasibility is constant.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num::{BigRational, Signed, Zero};

use crate::geom::{
    clip_convex, cross_sign, dot_sign, locate_in_polygon, on_segment, orientation, segments_intersect,
    twice_signed_area, Containment, Orientation, Point,
};
use crate::plane_graph::VertexId;

/// A face drawn as a counter-clockwise walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacePolygon {
    pub vertices: Vec<VertexId>,
    pub points: Vec<Point>,
}

impl FacePolygon {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    fn next(&self, i: usize) -> &Point {
        &self.points[(i + 1) % self.len()]
    }

    fn prev(&self, i: usize) -> &Point {
        &self.points[(i + self.len() - 1) % self.len()]
    }

    /// The walk position of `v`, if it occurs exactly once.
    pub fn position(&self, v: VertexId) -> Option<usize> {
        let mut it = (0..self.len()).filter(|&i| self.vertices[i] == v);
        let first = it.next()?;
        it.next().is_none().then_some(first)
    }

    pub fn contains_strictly(&self, p: &Point) -> bool {
        locate_in_polygon(&self.points, p) == Containment::Inside
    }
}

/// The directions at one anchor that keep it pointed.
///
/// The face angle at the anchor sweeps counter-clockwise from `first` to
/// `second`. A convex angle accepts every direction; a reflex one only those
/// leaving a part larger than pi on one side (a double wedge).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wedge {
    pub anchor: VertexId,
    pub apex: Point,
    pub first: Point,
    pub second: Point,
    pub reflex: bool,
}

impl Wedge {
    fn at(face: &FacePolygon, i: usize) -> Wedge {
        let apex = face.points[i].clone();
        let first = face.next(i).clone();
        let second = face.prev(i).clone();
        let reflex = orientation(&apex, &first, &second) != Orientation::Left;
        Wedge { anchor: face.vertices[i], apex, first, second, reflex }
    }

    pub fn admits(&self, p: &Point) -> bool {
        !self.reflex
            || orientation(&self.apex, &self.first, p) == Orientation::Right
            || orientation(&self.apex, p, &self.second) == Orientation::Right
    }
}

/// Direction `p - o` strictly inside the counter-clockwise angle from `a - o` to `b - o`.
fn strictly_inside_angle(o: &Point, a: &Point, b: &Point, p: &Point) -> bool {
    let ap = cross_sign(o, a, o, p);
    let pb = cross_sign(o, p, o, b);
    match orientation(o, a, b) {
        Orientation::Left => ap == Ordering::Greater && pb == Ordering::Greater,
        Orientation::Right => !(cross_sign(o, b, o, p) != Ordering::Less && cross_sign(o, p, o, a) != Ordering::Less),
        Orientation::Collinear => {
            if dot_sign(o, a, o, b) == Ordering::Greater {
                // full turn: anything but the direction of a
                ap != Ordering::Equal || dot_sign(o, a, o, p) == Ordering::Less
            } else {
                ap == Ordering::Greater
            }
        }
    }
}

/// The open segment from the anchor at walk position `i` to `p` runs
/// through the interior of the face, leaving the anchor into its face angle.
pub fn sees(face: &FacePolygon, i: usize, p: &Point) -> bool {
    let u = &face.points[i];
    let uid = face.vertices[i];
    if !strictly_inside_angle(u, face.next(i), face.prev(i), p) {
        return false;
    }
    let n = face.len();
    for j in 0..n {
        let (a, b) = (&face.points[j], face.next(j));
        let (ia, ib) = (face.vertices[j], face.vertices[(j + 1) % n]);
        if ia == uid || ib == uid {
            let other = if ia == uid { b } else { a };
            if on_segment(u, p, other) {
                return false;
            }
            continue;
        }
        if segments_intersect(u, p, a, b) {
            return false;
        }
    }
    true
}

/// The new vertex at `p`, joined to the anchors in walk order, has a reflex angle
/// and its edges leave it in that order.
fn new_vertex_pointed(face: &FacePolygon, anchors: &[usize], p: &Point) -> bool {
    let q: Vec<&Point> = anchors.iter().map(|&i| &face.points[i]).collect();
    let k = q.len();
    if k < 2 {
        return true;
    }
    if k == 2 {
        return orientation(p, q[0], q[1]) != Orientation::Collinear;
    }
    let turns: Vec<Orientation> = (0..k).map(|i| orientation(p, q[i], q[(i + 1) % k])).collect();
    if turns.contains(&Orientation::Collinear) {
        return false;
    }
    // counter-clockwise order around p: the turns add up to one full turn,
    // so at most one may be reflex, and exactly one must be
    turns.iter().filter(|&&t| t == Orientation::Right).count() == 1
}

/// Every placement constraint, evaluated directly at `p`.
pub fn placement_feasible(face: &FacePolygon, anchors: &[usize], p: &Point) -> bool {
    face.contains_strictly(p)
        && anchors.iter().all(|&i| sees(face, i, p) && Wedge::at(face, i).admits(p))
        && new_vertex_pointed(face, anchors, p)
}

#[derive(Clone, Debug)]
pub struct FeasibleRegion {
    pub face: FacePolygon,
    pub wedges: Vec<Wedge>,
    /// Counter-clockwise convex cells whose interiors make up the region.
    pub cells: Vec<Vec<Point>>,
}

impl FeasibleRegion {
    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// `p` lies in the interior of one of the cells.
    pub fn contains(&self, p: &Point) -> bool {
        self.cells.iter().any(|c| {
            let k = c.len();
            (0..k).all(|i| orientation(&c[i], &c[(i + 1) % k], p) == Orientation::Left)
        })
    }

    /// Cells sorted by decreasing area.
    pub fn cells_by_area(&self) -> Vec<&Vec<Point>> {
        let mut cells: Vec<(BigRational, &Vec<Point>)> = self.cells.iter().map(|c| (twice_signed_area(c), c)).collect();
        cells.sort_by(|a, b| b.0.cmp(&a.0));
        cells.into_iter().map(|(_, c)| c).collect()
    }

    pub fn total_area_f64(&self) -> f64 {
        use num::ToPrimitive;
        self.cells.iter().map(|c| twice_signed_area(c).to_f64().unwrap_or(0.0) / 2.0).sum()
    }
}

/// Canonical coefficients of the line through `a` and `b`.
fn line_key(a: &Point, b: &Point) -> (BigRational, BigRational, BigRational) {
    let ca = b.y() - a.y();
    let cb = a.x() - b.x();
    let cc = -(&ca * a.x() + &cb * a.y());
    let lead = if ca.is_zero() { cb.clone() } else { ca.clone() };
    let s = lead.abs() * if lead.is_negative() { -BigRational::from_integer(1.into()) } else { BigRational::from_integer(1.into()) };
    (ca / &s, cb / &s, cc / &s)
}

fn split(cells: Vec<Vec<Point>>, a: &Point, b: &Point) -> Vec<Vec<Point>> {
    let mut out = Vec::with_capacity(cells.len() + 4);
    for cell in cells {
        let sides: Vec<Orientation> = cell.iter().map(|p| orientation(a, b, p)).collect();
        let left = sides.contains(&Orientation::Left);
        let right = sides.contains(&Orientation::Right);
        if left && right {
            for piece in [clip_convex(&cell, a, b), clip_convex(&cell, b, a)] {
                if piece.len() >= 3 && twice_signed_area(&piece) > BigRational::zero() {
                    out.push(piece);
                }
            }
        } else {
            out.push(cell);
        }
    }
    out
}

/// Convex cells of the face interior cut by the given extra lines.
fn arrangement(face: &FacePolygon, lines: &[(Point, Point)]) -> Vec<Vec<Point>> {
    let pts = &face.points;
    let (mut lx, mut ly, mut hx, mut hy) = (pts[0].x().clone(), pts[0].y().clone(), pts[0].x().clone(), pts[0].y().clone());
    for p in pts {
        lx = lx.min(p.x().clone());
        ly = ly.min(p.y().clone());
        hx = hx.max(p.x().clone());
        hy = hy.max(p.y().clone());
    }
    let bbox = vec![
        Point::new(lx.clone(), ly.clone()),
        Point::new(hx.clone(), ly),
        Point::new(hx, hy.clone()),
        Point::new(lx, hy),
    ];
    let mut seen = BTreeSet::new();
    let mut cells = vec![bbox];
    let n = face.len();
    for i in 0..n {
        let (a, b) = (&pts[i], &pts[(i + 1) % n]);
        if a != b && seen.insert(line_key(a, b)) {
            cells = split(cells, a, b);
        }
    }
    cells.retain(|c| face.contains_strictly(&Point::centroid(c).expect("non-empty cell")));
    for (a, b) in lines {
        if a != b && seen.insert(line_key(a, b)) {
            cells = split(cells, a, b);
        }
    }
    cells
}

/// The set of points inside `face` from which the anchors at walk positions
/// `anchors` (in walk order) can be joined to a new pointed vertex while
/// every anchor stays pointed.
pub fn feasible_region(face: &FacePolygon, anchors: &[usize]) -> FeasibleRegion {
    let mut lines = Vec::new();
    for &i in anchors {
        for j in 0..face.len() {
            if face.vertices[j] != face.vertices[i] {
                lines.push((face.points[i].clone(), face.points[j].clone()));
            }
        }
    }
    let cells = arrangement(face, &lines)
        .into_iter()
        .filter(|c| placement_feasible(face, anchors, &Point::centroid(c).expect("non-empty cell")))
        .collect();
    let wedges = anchors.iter().map(|&i| Wedge::at(face, i)).collect();
    FeasibleRegion { face: face.clone(), wedges, cells }
}

/// Points of the face that see the anchor at walk position `i` along a
/// tangent, i.e. the region for that anchor alone.
pub fn tangency_region(face: &FacePolygon, i: usize) -> FeasibleRegion {
    let lines: Vec<(Point, Point)> = (0..face.len())
        .filter(|&j| face.vertices[j] != face.vertices[i])
        .map(|j| (face.points[i].clone(), face.points[j].clone()))
        .collect();
    let wedge = Wedge::at(face, i);
    let cells = arrangement(face, &lines)
        .into_iter()
        .filter(|c| {
            let p = Point::centroid(c).expect("non-empty cell");
            sees(face, i, &p) && wedge.admits(&p)
        })
        .collect();
    FeasibleRegion { face: face.clone(), wedges: vec![wedge], cells }
}
