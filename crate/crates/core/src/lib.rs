//! Pointed pseudo-triangulations of planar Laman graphs: combinatorial
//! pseudo-triangulation labelings, Henneberg constructions and two ways of
//! turning them into straight-line embeddings.

pub mod cpt;
pub mod geom;
pub mod henneberg;
pub mod incremental;
pub mod io;
pub mod plane_graph;
pub mod rigidity;
pub mod stretch;
pub mod verify;

pub use plane_graph::{PlaneGraph, RotationSystem};
pub use rigidity::Graph;
