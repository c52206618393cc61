//! Documents, instance generation, drawings and run configuration.

mod config;
mod document;
mod generate;
mod svg;

pub use config::{ConfigError, Method, RunConfig, WeightChoice, SEED_ENV};
pub use document::{format_rational, GraphDocument, LoadedGraph, ParseError};
pub use generate::{generate_sequence, GenerateError, GraphKind};
pub use svg::render_svg;

use crate::henneberg::replay;
use crate::plane_graph::PlaneGraph;

/// Generated plane graph of the given kind.
pub fn generate_plane_graph(n: usize, seed: u64, kind: GraphKind) -> Result<PlaneGraph, GenerateError> {
    let seq = generate_sequence(n, seed, kind)?;
    Ok(replay(&seq).expect("generated sequences replay"))
}

/// Generated instance as a document.
pub fn generate_document(n: usize, seed: u64, kind: GraphKind) -> Result<GraphDocument, GenerateError> {
    generate_plane_graph(n, seed, kind).map(|g| GraphDocument::from_graph(&g))
}
