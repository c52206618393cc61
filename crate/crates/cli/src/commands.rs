//! One function per subcommand. Each returns the text to emit or a failure
//! carrying the exit code.

use std::io::Read;
use std::path::Path;

use pseudotri::cpt::{assign_cpt, check_all_subgraph_corners, CptError};
use pseudotri::geom::Point;
use pseudotri::henneberg::{reverse_sequence, reverse_sequence_plus_one, HennebergError, Prescription};
use pseudotri::incremental::{embed_incremental, IncrementalConfig};
use pseudotri::io::{generate_document, render_svg, GraphDocument, GraphKind, LoadedGraph, Method, RunConfig};
use pseudotri::rigidity::{classify, RigidityClass};
use pseudotri::stretch::{stretch_cpt, StretchError};
use pseudotri::verify::{verify_embedding, GeometricReport};
use serde_json::json;

pub const PROPERTY_FAILS: u8 = 1;
pub const USAGE: u8 = 2;
pub const INTERNAL: u8 = 3;

#[derive(Debug)]
pub struct Output {
    pub text: String,
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
    /// Output still worth printing, e.g. a report on a failing drawing.
    pub partial: Option<String>,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into(), partial: None }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Failure::new(USAGE, message)
    }
}

fn ok(text: String) -> Result<Output, Failure> {
    Ok(Output { text })
}

fn json_line(v: serde_json::Value) -> String {
    format!("{v}\n")
}

pub fn load(path: &Path) -> Result<LoadedGraph, Failure> {
    let mut text = String::new();
    let read = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| Failure::usage(e.to_string()))?;
    GraphDocument::parse(&text).and_then(|d| d.load()).map_err(|e| Failure::usage(e.to_string()))
}

fn class_name(c: &RigidityClass) -> &'static str {
    match c {
        RigidityClass::Laman => "laman",
        RigidityClass::LamanPlusOne { .. } => "laman-plus-one",
        RigidityClass::Circuit => "circuit",
        RigidityClass::Flexible => "flexible",
        RigidityClass::Overbraced => "overbraced",
    }
}

pub fn check(doc: &LoadedGraph) -> Result<Output, Failure> {
    let g = &doc.graph;
    let class = classify(&g.graph());
    let mut report = json!({ "class": class_name(&class), "n": g.n(), "m": g.m() });
    if let RigidityClass::LamanPlusOne { vertices, edges } = &class {
        report["circuit"] = json!({ "vertices": vertices, "edges": edges });
    }
    let text = json_line(report);
    if class == RigidityClass::Laman {
        ok(text)
    } else {
        Err(Failure { partial: Some(text), ..Failure::new(PROPERTY_FAILS, "graph is not Laman") })
    }
}

fn henneberg_failure(e: HennebergError) -> Failure {
    match e {
        HennebergError::NotLaman | HennebergError::NotLamanPlusOne => Failure::new(PROPERTY_FAILS, e.to_string()),
        HennebergError::PrescriptionInvalid(_) | HennebergError::OuterFaceTooSmall(_) => Failure::usage(e.to_string()),
        _ => Failure::new(INTERNAL, e.to_string()),
    }
}

pub fn henneberg(doc: &LoadedGraph) -> Result<Output, Failure> {
    let g = &doc.graph;
    let seq = match classify(&g.graph()) {
        RigidityClass::Laman => reverse_sequence(g, &Prescription::None),
        RigidityClass::Circuit | RigidityClass::LamanPlusOne { .. } => reverse_sequence_plus_one(g),
        _ => Err(HennebergError::NotLaman),
    }
    .map_err(henneberg_failure)?;
    ok(json_line(serde_json::to_value(&seq).expect("sequence serializes")))
}

fn cpt_failure(e: CptError) -> Failure {
    match e {
        CptError::BadEdgeCount { .. } | CptError::NoPerfectMatching => Failure::new(PROPERTY_FAILS, e.to_string()),
        CptError::PrescribedVertexOnOuterFace(_) | CptError::VertexOutOfRange(_) => Failure::usage(e.to_string()),
        _ => Failure::new(INTERNAL, e.to_string()),
    }
}

pub fn cpt(doc: &LoadedGraph, nonpointed: Option<usize>) -> Result<Output, Failure> {
    let g = &doc.graph;
    let prescribed = nonpointed.or(doc.prescribed_nonpointed);
    let lab = assign_cpt(g, prescribed).map_err(cpt_failure)?;
    let mut out = GraphDocument::from_graph(g).with_labeling(g, &lab);
    out.prescribed_nonpointed = prescribed;
    ok(out.to_text())
}

fn stretch_failure(e: StretchError) -> Failure {
    match e {
        StretchError::InvalidLabeling
        | StretchError::NotThreeConnected { .. }
        | StretchError::DissectionFailed(_)
        | StretchError::RepeatedBoundaryVertex(_) => Failure::new(PROPERTY_FAILS, e.to_string()),
        _ => Failure::new(INTERNAL, e.to_string()),
    }
}

fn tutte(doc: &LoadedGraph, config: &RunConfig) -> Result<Output, Failure> {
    let g = &doc.graph;
    let lab = match &doc.labeling {
        Some(l) => l.clone(),
        None => assign_cpt(g, doc.prescribed_nonpointed).map_err(cpt_failure)?,
    };
    if g.n() <= config.n_limit {
        let stretchable = check_all_subgraph_corners(g, &lab, config.n_limit).map_err(cpt_failure)?;
        if !stretchable {
            return Err(Failure::new(PROPERTY_FAILS, "some subgraph has too few corners; the labeling is not stretchable"));
        }
    }
    let emb = stretch_cpt(g, &lab, &config.stretch_config()).map_err(stretch_failure)?;
    if !verify_embedding(&emb, g).pseudo_triangulation {
        return Err(Failure::new(INTERNAL, "stretched drawing failed verification"));
    }
    let mut out = GraphDocument::from_graph(g).with_embedding(&emb).with_labeling(g, &lab);
    out.prescribed_nonpointed = doc.prescribed_nonpointed;
    ok(out.to_text())
}

pub fn stretch(doc: &LoadedGraph, config: &RunConfig) -> Result<Output, Failure> {
    tutte(doc, config)
}

fn incremental(doc: &LoadedGraph, config: &RunConfig) -> Result<Output, Failure> {
    let g = &doc.graph;
    let outer = g.outer_cycle_ccw();
    if outer.len() != 3 {
        return Err(Failure::usage("the henneberg method needs a triangular outer face"));
    }
    if doc.prescribed_nonpointed.is_some() {
        return Err(Failure::usage("the henneberg method embeds Laman graphs only"));
    }
    let seq = reverse_sequence(g, &Prescription::Triangle(outer[0], outer[1], outer[2])).map_err(henneberg_failure)?;
    let base = [Point::from_ints(0, 0), Point::from_ints(4, 0), Point::from_ints(2, 3)];
    let cfg = IncrementalConfig { seed: config.seed, ..IncrementalConfig::default() };
    let emb = embed_incremental(&seq, &base, &cfg).map_err(|e| Failure::new(INTERNAL, e.to_string()))?;
    let report = verify_embedding(&emb, g);
    let lab = match (report.pointed_pseudo_triangulation, report.labeling) {
        (true, Some(lab)) => lab,
        _ => return Err(Failure::new(INTERNAL, "incremental drawing failed verification")),
    };
    ok(GraphDocument::from_graph(g).with_embedding(&emb).with_labeling(g, &lab).to_text())
}

pub fn embed(doc: &LoadedGraph, config: &RunConfig) -> Result<Output, Failure> {
    match config.method {
        Method::Tutte => tutte(doc, config),
        Method::Henneberg => incremental(doc, config),
    }
}

fn report_json(r: &GeometricReport, labels_match: Option<bool>, holds: bool) -> serde_json::Value {
    json!({
        "holds": holds,
        "non_crossing": r.non_crossing,
        "rotation_consistent": r.rotation_consistent,
        "outer_convex": r.outer_convex,
        "pseudo_triangulation": r.pseudo_triangulation,
        "pointed_pseudo_triangulation": r.pointed_pseudo_triangulation,
        "nonpointed": r.nonpointed,
        "face_convex_counts": r.face_convex_counts,
        "straight_angles": r.straight_angles.len(),
        "labels_match": labels_match,
    })
}

pub fn verify(doc: &LoadedGraph) -> Result<Output, Failure> {
    let Some(emb) = &doc.embedding else {
        return Err(Failure::usage("document has no coords"));
    };
    let r = verify_embedding(emb, &doc.graph);
    let labels_match = doc.labeling.as_ref().map(|l| r.labeling.as_ref() == Some(l));
    let expected_nonpointed: Vec<usize> = doc.prescribed_nonpointed.into_iter().collect();
    let holds = r.pseudo_triangulation && r.nonpointed == expected_nonpointed && labels_match != Some(false);
    let text = json_line(report_json(&r, labels_match, holds));
    if holds {
        ok(text)
    } else {
        Err(Failure { partial: Some(text), ..Failure::new(PROPERTY_FAILS, "drawing is not the expected pseudo-triangulation") })
    }
}

pub fn gen(n: usize, seed: u64, kind: GraphKind) -> Result<Output, Failure> {
    generate_document(n, seed, kind).map(|d| Output { text: d.to_text() }).map_err(|e| Failure::usage(e.to_string()))
}

pub fn svg(doc: &LoadedGraph) -> Result<Output, Failure> {
    let Some(emb) = &doc.embedding else {
        return Err(Failure::usage("document has no coords"));
    };
    ok(render_svg(emb, &doc.graph, doc.labeling.as_ref()))
}
