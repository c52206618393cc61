//! Exact planar predicates over rational points.
//!
//! Every point carries its exact rational coordinates together with a
//! floating-point approximation. Predicates evaluate the determinant in
//! floating point first and only fall back to rational arithmetic when the
//! result is within a conservative error bound of zero.

use std::cmp::Ordering;
use std::fmt;

use num::{BigInt, BigRational, One, ToPrimitive, Zero};

pub type Rational = BigRational;

/// A point in the plane with exact rational coordinates.
#[derive(Clone)]
pub struct Point {
    x: Rational,
    y: Rational,
    approx: [f64; 2],
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        let approx = [x.to_f64().unwrap_or(f64::NAN), y.to_f64().unwrap_or(f64::NAN)];
        Point { x, y, approx }
    }

    /// Exact conversion of a pair of finite doubles (every finite double is dyadic).
    pub fn from_f64(x: f64, y: f64) -> Option<Self> {
        let rx = Rational::from_float(x)?;
        let ry = Rational::from_float(y)?;
        Some(Point { x: rx, y: ry, approx: [x, y] })
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(Rational::from_integer(x.into()), Rational::from_integer(y.into()))
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn y(&self) -> &Rational {
        &self.y
    }

    pub fn to_f64(&self) -> [f64; 2] {
        self.approx
    }

    /// Average of a non-empty set of points.
    pub fn centroid<'a>(points: impl IntoIterator<Item = &'a Point>) -> Option<Point> {
        let mut sx = Rational::zero();
        let mut sy = Rational::zero();
        let mut count = 0i64;
        for p in points {
            sx += &p.x;
            sy += &p.y;
            count += 1;
        }
        if count == 0 {
            return None;
        }
        let k = Rational::from_integer(count.into());
        Some(Point::new(sx / &k, sy / k))
    }

    /// `self + t * (other - self)`.
    pub fn lerp(&self, other: &Point, t: &Rational) -> Point {
        Point::new(
            &self.x + (&other.x - &self.x) * t,
            &self.y + (&other.y - &self.y) * t,
        )
    }
}

impl PartialEq for Point {
    fn eq(&self, other: &Self) -> bool {
        self.x == other.x && self.y == other.y
    }
}

impl Eq for Point {}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Turn direction of the triple `(p, q, r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// Counter-clockwise turn.
    Left,
    /// Clockwise turn.
    Right,
    Collinear,
}

impl Orientation {
    fn from_sign(s: Ordering) -> Self {
        match s {
            Ordering::Greater => Orientation::Left,
            Ordering::Less => Orientation::Right,
            Ordering::Equal => Orientation::Collinear,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Left => Orientation::Right,
            Orientation::Right => Orientation::Left,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

fn filtered_cross(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> Option<Ordering> {
    // sign of (b - a) x (d - c)
    let ux = b[0] - a[0];
    let uy = b[1] - a[1];
    let vx = d[0] - c[0];
    let vy = d[1] - c[1];
    let det = ux * vy - uy * vx;
    let mag = (b[0].abs() + a[0].abs()) * (d[1].abs() + c[1].abs())
        + (b[1].abs() + a[1].abs()) * (d[0].abs() + c[0].abs());
    let bound = 1e-12 * mag;
    if !det.is_finite() || !bound.is_finite() {
        return None;
    }
    if det > bound {
        Some(Ordering::Greater)
    } else if det < -bound {
        Some(Ordering::Less)
    } else {
        None
    }
}

fn exact_cross(a: &Point, b: &Point, c: &Point, d: &Point) -> Ordering {
    let lhs = (&b.x - &a.x) * (&d.y - &c.y);
    let rhs = (&b.y - &a.y) * (&d.x - &c.x);
    lhs.cmp(&rhs)
}

/// Sign of the cross product `(b - a) x (d - c)`.
pub fn cross_sign(a: &Point, b: &Point, c: &Point, d: &Point) -> Ordering {
    filtered_cross(a.approx, b.approx, c.approx, d.approx)
        .unwrap_or_else(|| exact_cross(a, b, c, d))
}

/// Exact orientation of `r` relative to the directed line `p -> q`.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    Orientation::from_sign(cross_sign(p, q, p, r))
}

/// Sign of the dot product `(b - a) . (d - c)`.
pub fn dot_sign(a: &Point, b: &Point, c: &Point, d: &Point) -> Ordering {
    let ux = b.approx[0] - a.approx[0];
    let uy = b.approx[1] - a.approx[1];
    let vx = d.approx[0] - c.approx[0];
    let vy = d.approx[1] - c.approx[1];
    let dot = ux * vx + uy * vy;
    let mag = (b.approx[0].abs() + a.approx[0].abs()) * (d.approx[0].abs() + c.approx[0].abs())
        + (b.approx[1].abs() + a.approx[1].abs()) * (d.approx[1].abs() + c.approx[1].abs());
    let bound = 1e-12 * mag;
    if dot.is_finite() && bound.is_finite() {
        if dot > bound {
            return Ordering::Greater;
        }
        if dot < -bound {
            return Ordering::Less;
        }
    }
    let exact = (&b.x - &a.x) * (&d.x - &c.x) + (&b.y - &a.y) * (&d.y - &c.y);
    exact.cmp(&Rational::zero())
}

/// True when `r` lies on the closed segment `p q` (assumes nothing about collinearity).
pub fn on_segment(p: &Point, q: &Point, r: &Point) -> bool {
    if orientation(p, q, r) != Orientation::Collinear {
        return false;
    }
    let (lox, hix) = if p.x <= q.x { (&p.x, &q.x) } else { (&q.x, &p.x) };
    let (loy, hiy) = if p.y <= q.y { (&p.y, &q.y) } else { (&q.y, &p.y) };
    &r.x >= lox && &r.x <= hix && &r.y >= loy && &r.y <= hiy
}

fn bbox_disjoint(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    // conservative float test; only used to skip pairs that are far apart
    let eps = 1e-9;
    let (a, b, c, d) = (a.approx, b.approx, c.approx, d.approx);
    if [a, b, c, d].iter().any(|p| !p[0].is_finite() || !p[1].is_finite()) {
        return false;
    }
    let scale = 1.0 + a[0].abs().max(a[1].abs()).max(b[0].abs()).max(b[1].abs())
        .max(c[0].abs()).max(c[1].abs()).max(d[0].abs()).max(d[1].abs());
    let tol = eps * scale;
    a[0].max(b[0]) + tol < c[0].min(d[0])
        || c[0].max(d[0]) + tol < a[0].min(b[0])
        || a[1].max(b[1]) + tol < c[1].min(d[1])
        || c[1].max(d[1]) + tol < a[1].min(b[1])
}

/// Closed segments `a b` and `c d` share at least one point.
pub fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    if bbox_disjoint(a, b, c, d) {
        return false;
    }
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    if o1 != o2
        && o3 != o4
        && o1 != Orientation::Collinear
        && o2 != Orientation::Collinear
        && o3 != Orientation::Collinear
        && o4 != Orientation::Collinear
    {
        return true;
    }
    (o1 == Orientation::Collinear && on_segment(a, b, c))
        || (o2 == Orientation::Collinear && on_segment(a, b, d))
        || (o3 == Orientation::Collinear && on_segment(c, d, a))
        || (o4 == Orientation::Collinear && on_segment(c, d, b))
}

/// Intersection point of the lines `a b` and `c d`, if they are not parallel.
pub fn line_intersection(a: &Point, b: &Point, c: &Point, d: &Point) -> Option<Point> {
    let rx = &b.x - &a.x;
    let ry = &b.y - &a.y;
    let sx = &d.x - &c.x;
    let sy = &d.y - &c.y;
    let denom = &rx * &sy - &ry * &sx;
    if denom.is_zero() {
        return None;
    }
    let t = ((&c.x - &a.x) * &sy - (&c.y - &a.y) * &sx) / denom;
    Some(Point::new(&a.x + &rx * &t, &a.y + &ry * &t))
}

/// Twice the signed area of a polygon (positive when counter-clockwise).
pub fn twice_signed_area(poly: &[Point]) -> Rational {
    let mut acc = Rational::zero();
    for i in 0..poly.len() {
        let p = &poly[i];
        let q = &poly[(i + 1) % poly.len()];
        acc += &p.x * &q.y - &q.x * &p.y;
    }
    acc
}

/// Floating-point signed area, for diagnostics only.
pub fn signed_area_f64(poly: &[[f64; 2]]) -> f64 {
    let mut acc = 0.0;
    for i in 0..poly.len() {
        let p = poly[i];
        let q = poly[(i + 1) % poly.len()];
        acc += p[0] * q[1] - q[0] * p[1];
    }
    acc / 2.0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Containment {
    Inside,
    Outside,
    Boundary,
}

/// Exact point-in-polygon test for a simple polygon.
pub fn locate_in_polygon(poly: &[Point], p: &Point) -> Containment {
    let n = poly.len();
    let mut winding = 0i32;
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        if on_segment(a, b, p) {
            return Containment::Boundary;
        }
        if a.y <= p.y {
            if b.y > p.y && orientation(a, b, p) == Orientation::Left {
                winding += 1;
            }
        } else if b.y <= p.y && orientation(a, b, p) == Orientation::Right {
            winding -= 1;
        }
    }
    if winding != 0 {
        Containment::Inside
    } else {
        Containment::Outside
    }
}

/// Clip a convex polygon (ccw) to the closed half-plane left of `a -> b`.
pub fn clip_convex(poly: &[Point], a: &Point, b: &Point) -> Vec<Point> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    let n = poly.len();
    for i in 0..n {
        let p = &poly[i];
        let q = &poly[(i + 1) % n];
        let op = orientation(a, b, p);
        let oq = orientation(a, b, q);
        if op != Orientation::Right {
            out.push(p.clone());
        }
        let crosses = (op == Orientation::Left && oq == Orientation::Right)
            || (op == Orientation::Right && oq == Orientation::Left);
        if crosses {
            if let Some(x) = line_intersection(p, q, a, b) {
                out.push(x);
            }
        }
    }
    dedup_cyclic(out)
}

fn dedup_cyclic(mut pts: Vec<Point>) -> Vec<Point> {
    pts.dedup();
    while pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    pts
}

/// Round a rational to the nearest multiple of `2^-bits`.
pub fn round_dyadic(v: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = v * Rational::from_integer(scale.clone());
    let rounded = scaled.round();
    rounded / Rational::from_integer(scale)
}

/// Where an embedding came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    Tutte,
    Henneberg,
    External,
}

/// A position for every vertex of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub points: Vec<Point>,
    pub provenance: Provenance,
}

impl Embedding {
    pub fn new(points: Vec<Point>, provenance: Provenance) -> Self {
        Embedding { points, provenance }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn to_f64(&self) -> Vec<[f64; 2]> {
        self.points.iter().map(Point::to_f64).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    #[test]
    fn orientation_basic_cases() {
        assert_eq!(orientation(&p(0, 0), &p(1, 0), &p(0, 1)), Orientation::Left);
        assert_eq!(orientation(&p(0, 0), &p(1, 0), &p(2, 0)), Orientation::Collinear);
        assert_eq!(orientation(&p(0, 0), &p(1, 0), &p(1, -1)), Orientation::Right);
    }

    #[test]
    fn orientation_falls_back_to_exact_near_degeneracy() {
        // 0.1 + 0.2 style rounding: the three doubles below are exactly collinear
        let a = Point::from_f64(0.5, 0.5).unwrap();
        let b = Point::from_f64(12.0, 12.0).unwrap();
        let c = Point::from_f64(24.0, 24.0).unwrap();
        assert_eq!(orientation(&a, &b, &c), Orientation::Collinear);
        let tiny = Point::from_f64(24.0, 24.0 + 1e-14).unwrap();
        assert_eq!(orientation(&a, &b, &tiny), Orientation::Left);
    }

    #[test]
    fn segment_intersection_cases() {
        assert!(segments_intersect(&p(0, 0), &p(2, 2), &p(0, 2), &p(2, 0)));
        assert!(!segments_intersect(&p(0, 0), &p(1, 0), &p(0, 1), &p(1, 1)));
        assert!(segments_intersect(&p(0, 0), &p(2, 0), &p(1, 0), &p(1, 5)));
        assert!(segments_intersect(&p(0, 0), &p(2, 0), &p(1, 0), &p(3, 0)));
        assert!(!segments_intersect(&p(0, 0), &p(1, 0), &p(2, 0), &p(3, 0)));
    }

    #[test]
    fn polygon_location() {
        let sq = vec![p(0, 0), p(4, 0), p(4, 4), p(0, 4)];
        assert_eq!(locate_in_polygon(&sq, &p(2, 2)), Containment::Inside);
        assert_eq!(locate_in_polygon(&sq, &p(4, 2)), Containment::Boundary);
        assert_eq!(locate_in_polygon(&sq, &p(5, 2)), Containment::Outside);
        assert_eq!(twice_signed_area(&sq), Rational::from_integer(32.into()));
    }

    #[test]
    fn convex_clipping_halves_a_square() {
        let sq = vec![p(0, 0), p(4, 0), p(4, 4), p(0, 4)];
        let half = clip_convex(&sq, &p(2, 0), &p(2, 4));
        assert_eq!(twice_signed_area(&half), Rational::from_integer(16.into()));
    }

    #[test]
    fn dyadic_rounding() {
        let third = Rational::new(1.into(), 3.into());
        let r = round_dyadic(&third, 4);
        assert_eq!(r, Rational::new(5.into(), 16.into()));
    }
}
