//! Straight-line realization of a cpt labeling through a directed Tutte
//! embedding of a partially directed triangulation.

mod aux;
mod connectivity;
mod solve;

pub use aux::{build_aux_digraph, AuxDigraph};
pub use connectivity::{check_boundary_3connectivity, BoundaryConnectivity};
pub use solve::{
    area_defect, equilibrium_residual, faces_positively_oriented, regular_polygon, tutte_embed, tutte_embed_ordered,
    vertices_inside_out_hulls,
};

use thiserror::Error;

use crate::cpt::{validate_cpt, CptLabeling};
use crate::geom::Embedding;
use crate::plane_graph::{GraphError, PlaneGraph, VertexId};
use crate::verify::{derive_labeling, verify_embedding};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StretchError {
    #[error("labeling is not a valid cpt of the graph")]
    InvalidLabeling,
    #[error("outer boundary visits vertex {0} twice")]
    RepeatedBoundaryVertex(VertexId),
    #[error("no diagonal can split face {0:?} without doubling an edge")]
    DissectionFailed(Vec<VertexId>),
    #[error("vertex {vertex} reaches the boundary only through {cut:?}")]
    NotThreeConnected { vertex: VertexId, cut: Vec<VertexId> },
    #[error("boundary positions are not a strictly convex counter-clockwise polygon")]
    BoundaryNotConvex,
    #[error("solver failure: {0}")]
    SolverFailure(String),
    #[error("embedding does not realize the labeling")]
    LabelMismatch,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightMode {
    Unit,
    /// Uniform in `[0.5, 1.5]`, seeded.
    Random { seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverKind {
    Float,
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StretchConfig {
    pub weights: WeightMode,
    pub solver: SolverKind,
    /// Bound on the equilibrium residual at unit diameter.
    pub tolerance: f64,
    /// Re-solves with freshly seeded random weights when verification fails.
    pub retries: u32,
}

impl Default for StretchConfig {
    fn default() -> Self {
        StretchConfig { weights: WeightMode::Unit, solver: SolverKind::Float, tolerance: 1e-10, retries: 3 }
    }
}

#[derive(Clone, Debug)]
pub struct StretchOutcome {
    pub embedding: Embedding,
    pub aux: AuxDigraph,
    pub residual: f64,
    pub area_defect: f64,
    /// Solves performed, including the successful one.
    pub attempts: u32,
}

/// Stretch `lab` to a straight-line embedding of `g` realizing it.
pub fn stretch_cpt(g: &PlaneGraph, lab: &CptLabeling, config: &StretchConfig) -> Result<Embedding, StretchError> {
    stretch_cpt_detailed(g, lab, config).map(|o| o.embedding)
}

pub fn stretch_cpt_detailed(
    g: &PlaneGraph,
    lab: &CptLabeling,
    config: &StretchConfig,
) -> Result<StretchOutcome, StretchError> {
    if !validate_cpt(g, lab).is_valid() {
        return Err(StretchError::InvalidLabeling);
    }
    let mut weights = config.weights;
    let mut attempt = 0;
    loop {
        attempt += 1;
        let aux = build_aux_digraph(g, lab, weights)?;
        if let BoundaryConnectivity::Separated { vertex, cut } = check_boundary_3connectivity(&aux) {
            return Err(StretchError::NotThreeConnected { vertex, cut });
        }
        let boundary = regular_polygon(aux.boundary.len());
        let embedding = tutte_embed(&aux, &boundary, config.solver)?;
        let residual = equilibrium_residual(&aux, &embedding);
        if residual.is_nan() || residual > config.tolerance {
            return Err(StretchError::SolverFailure(format!("equilibrium residual {residual:e}")));
        }
        let realized = derive_labeling(&embedding, g).ok().as_ref() == Some(lab)
            && verify_embedding(&embedding, g).pseudo_triangulation;
        if realized {
            let area_defect = area_defect(&aux, &embedding);
            return Ok(StretchOutcome { embedding, aux, residual, area_defect, attempts: attempt });
        }
        if attempt > config.retries {
            return Err(StretchError::LabelMismatch);
        }
        let seed = match config.weights {
            WeightMode::Random { seed } => seed,
            WeightMode::Unit => 0,
        };
        weights = WeightMode::Random { seed: seed.wrapping_add(u64::from(attempt)) };
    }
}
