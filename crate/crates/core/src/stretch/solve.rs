//! Directed Tutte equilibrium: assembly, solution and numeric checks.

use faer::prelude::*;
use faer::sparse::{SparseColMat, Triplet};
use faer::Mat;
use num::{BigRational, FromPrimitive, Zero};

use crate::geom::{orientation, signed_area_f64, Embedding, Orientation, Point, Provenance};
use crate::plane_graph::VertexId;
use crate::verify::polar_cmp;

use super::{AuxDigraph, SolverKind, StretchError};

/// Dense solving is used when the sparse factorization fails, up to this many unknowns.
const DENSE_LIMIT: usize = 2000;

/// `k` points on the unit circle, counter-clockwise, the first at the top.
pub fn regular_polygon(k: usize) -> Vec<Point> {
    (0..k)
        .map(|i| {
            let t = std::f64::consts::FRAC_PI_2 + std::f64::consts::TAU * i as f64 / k as f64;
            Point::from_f64(t.cos(), t.sin()).expect("finite")
        })
        .collect()
}

fn strictly_convex_ccw(pts: &[Point]) -> bool {
    let k = pts.len();
    k >= 3 && (0..k).all(|i| orientation(&pts[i], &pts[(i + 1) % k], &pts[(i + 2) % k]) == Orientation::Left)
}

struct System {
    /// Row of each interior vertex, or `None` on the boundary.
    index: Vec<Option<usize>>,
    interior: Vec<VertexId>,
}

fn index_interior(aux: &AuxDigraph, order: Option<&[VertexId]>) -> System {
    let on_boundary = aux.on_boundary();
    let interior: Vec<VertexId> = match order {
        Some(o) => o.to_vec(),
        None => (0..aux.n()).filter(|&v| !on_boundary[v]).collect(),
    };
    let mut index = vec![None; aux.n()];
    for (i, &v) in interior.iter().enumerate() {
        index[v] = Some(i);
    }
    System { index, interior }
}

/// Place the interior vertices at the equilibrium of their out-neighbours,
/// with the boundary cycle fixed at `boundary_positions`.
pub fn tutte_embed(aux: &AuxDigraph, boundary_positions: &[Point], solver: SolverKind) -> Result<Embedding, StretchError> {
    tutte_embed_ordered(aux, boundary_positions, solver, None)
}

/// As [`tutte_embed`], with the equations assembled in the given interior vertex order.
pub fn tutte_embed_ordered(
    aux: &AuxDigraph,
    boundary_positions: &[Point],
    solver: SolverKind,
    order: Option<&[VertexId]>,
) -> Result<Embedding, StretchError> {
    if boundary_positions.len() != aux.boundary.len() || !strictly_convex_ccw(boundary_positions) {
        return Err(StretchError::BoundaryNotConvex);
    }
    let mut points = vec![Point::from_ints(0, 0); aux.n()];
    for (&v, p) in aux.boundary.iter().zip(boundary_positions) {
        points[v] = p.clone();
    }
    let sys = index_interior(aux, order);
    if !sys.interior.is_empty() {
        let solved = match solver {
            SolverKind::Float => solve_float(aux, &sys, &points)?,
            SolverKind::Exact => solve_exact(aux, &sys, &points)?,
        };
        for (&v, p) in sys.interior.iter().zip(solved) {
            points[v] = p;
        }
    }
    Ok(Embedding::new(points, Provenance::Tutte))
}

fn solve_float(aux: &AuxDigraph, sys: &System, points: &[Point]) -> Result<Vec<Point>, StretchError> {
    let k = sys.interior.len();
    let fixed: Vec<[f64; 2]> = points.iter().map(Point::to_f64).collect();
    let mut triplets = Vec::new();
    let mut rhs = Mat::<f64>::zeros(k, 2);
    for (i, &v) in sys.interior.iter().enumerate() {
        let mut diag = 0.0;
        for &(u, w) in &aux.out[v] {
            diag += w;
            match sys.index[u] {
                Some(j) => triplets.push(Triplet::new(i, j, -w)),
                None => {
                    rhs[(i, 0)] += w * fixed[u][0];
                    rhs[(i, 1)] += w * fixed[u][1];
                }
            }
        }
        triplets.push(Triplet::new(i, i, diag));
    }
    let a = SparseColMat::<usize, f64>::try_new_from_triplets(k, k, &triplets)
        .map_err(|e| StretchError::SolverFailure(format!("assembly: {e:?}")))?;
    let solve: Box<dyn Fn(&Mat<f64>) -> Mat<f64>> = match a.sp_lu() {
        Ok(lu) => Box::new(move |b| lu.solve(b)),
        Err(_) if k <= DENSE_LIMIT => {
            let lu = a.to_dense().partial_piv_lu();
            Box::new(move |b| lu.solve(b))
        }
        Err(e) => return Err(StretchError::SolverFailure(format!("factorization: {e:?}"))),
    };
    let mut x = solve(&rhs);
    for _ in 0..2 {
        // residual rhs - A x, i.e. sum w (p_u - p_v) per row
        let mut r = Mat::<f64>::zeros(k, 2);
        for (i, &v) in sys.interior.iter().enumerate() {
            for &(u, w) in &aux.out[v] {
                let pu = match sys.index[u] {
                    Some(j) => [x[(j, 0)], x[(j, 1)]],
                    None => fixed[u],
                };
                r[(i, 0)] += w * (pu[0] - x[(i, 0)]);
                r[(i, 1)] += w * (pu[1] - x[(i, 1)]);
            }
        }
        x += solve(&r);
    }
    (0..k)
        .map(|i| {
            Point::from_f64(x[(i, 0)], x[(i, 1)]).ok_or_else(|| StretchError::SolverFailure("non-finite solution".into()))
        })
        .collect()
}

fn solve_exact(aux: &AuxDigraph, sys: &System, points: &[Point]) -> Result<Vec<Point>, StretchError> {
    let k = sys.interior.len();
    let weight = |w: f64| BigRational::from_f64(w).ok_or_else(|| StretchError::SolverFailure("weight".into()));
    // augmented rows: k coefficients, then x and y right-hand sides
    let mut m = vec![vec![BigRational::zero(); k + 2]; k];
    for (i, &v) in sys.interior.iter().enumerate() {
        for &(u, w) in &aux.out[v] {
            let w = weight(w)?;
            m[i][i] += &w;
            match sys.index[u] {
                Some(j) => m[i][j] -= &w,
                None => {
                    m[i][k] += &w * points[u].x();
                    m[i][k + 1] += &w * points[u].y();
                }
            }
        }
    }
    for col in 0..k {
        let pivot = (col..k)
            .find(|&r| !m[r][col].is_zero())
            .ok_or_else(|| StretchError::SolverFailure("singular system".into()))?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for c in col..k + 2 {
            m[col][c] = &m[col][c] / &p;
        }
        let row = m[col].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == col || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for c in col..k + 2 {
                other[c] -= &f * &row[c];
            }
        }
    }
    Ok(m.into_iter().map(|row| Point::new(row[k].clone(), row[k + 1].clone())).collect())
}

/// Largest distance between two boundary points.
fn boundary_diameter(aux: &AuxDigraph, pts: &[[f64; 2]]) -> f64 {
    let b = &aux.boundary;
    let mut d: f64 = 0.0;
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            let (p, q) = (pts[b[i]], pts[b[j]]);
            d = d.max((p[0] - q[0]).hypot(p[1] - q[1]));
        }
    }
    d
}

/// Largest equilibrium defect `|sum w (p_v - p_u)|` with coordinates scaled to unit diameter.
pub fn equilibrium_residual(aux: &AuxDigraph, emb: &Embedding) -> f64 {
    let pts = emb.to_f64();
    let scale = boundary_diameter(aux, &pts);
    let on_boundary = aux.on_boundary();
    let mut worst: f64 = 0.0;
    for v in 0..aux.n() {
        if on_boundary[v] {
            continue;
        }
        let (mut rx, mut ry) = (0.0, 0.0);
        for &(u, w) in &aux.out[v] {
            rx += w * (pts[v][0] - pts[u][0]);
            ry += w * (pts[v][1] - pts[u][1]);
        }
        worst = worst.max(rx.hypot(ry) / scale);
    }
    worst
}

/// Relative gap between the summed signed areas of the interior faces of
/// the triangulation and the area of the boundary polygon.
pub fn area_defect(aux: &AuxDigraph, emb: &Embedding) -> f64 {
    let pts = emb.to_f64();
    let g = &aux.graph;
    let total: f64 = g
        .interior_faces()
        .map(|f| {
            let poly: Vec<[f64; 2]> = g.face(f).vertices().iter().map(|&v| pts[v]).collect();
            signed_area_f64(&poly)
        })
        .sum();
    let outer: Vec<[f64; 2]> = aux.boundary.iter().map(|&v| pts[v]).collect();
    let area = signed_area_f64(&outer);
    (total - area).abs() / area.abs()
}

/// Every interior face of the triangulation has positive signed area.
pub fn faces_positively_oriented(aux: &AuxDigraph, emb: &Embedding) -> bool {
    let g = &aux.graph;
    g.interior_faces().all(|f| {
        let v = g.face(f).vertices();
        (0..v.len()).all(|i| {
            orientation(&emb.points[v[i]], &emb.points[v[(i + 1) % v.len()]], &emb.points[v[(i + 2) % v.len()]])
                != Orientation::Right
        }) && crate::geom::twice_signed_area(&v.iter().map(|&x| emb.points[x].clone()).collect::<Vec<_>>())
            > BigRational::zero()
    })
}

/// Interior vertices lying strictly inside the convex hull of their out-neighbours.
pub fn vertices_inside_out_hulls(aux: &AuxDigraph, emb: &Embedding) -> Vec<bool> {
    let on_boundary = aux.on_boundary();
    (0..aux.n())
        .map(|v| {
            if on_boundary[v] {
                return true;
            }
            let o = &emb.points[v];
            let mut nb: Vec<&Point> = aux.out[v].iter().map(|&(u, _)| &emb.points[u]).collect();
            if nb.len() < 3 || nb.iter().any(|p| *p == o) {
                return false;
            }
            nb.sort_by(|a, b| polar_cmp(o, a, b));
            (0..nb.len()).all(|i| orientation(o, nb[i], nb[(i + 1) % nb.len()]) == Orientation::Left)
        })
        .collect()
}
