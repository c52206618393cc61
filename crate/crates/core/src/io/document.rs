//! The graph document: a small JSON file with one top-level field per line.
//!
//! ```text
//! {
//!   "n": 4,
//!   "edges": [[0,1],[0,2],[0,3],[1,2],[1,3]],
//!   "rotations": [[1,3,2],[2,3,0],[0,1],[0,1]],
//!   "outer_face": [0,1,2],
//!   "coords": [["0/1","0/1"],["4/1","0/1"],["2/1","3/1"],["2/1","1/1"]]
//! }
//! ```
//!
//! `outer_face` lists the outer boundary counter-clockwise. `coords` are
//! exact rationals. Each label is `[vertex, face index, big]`, with faces
//! numbered as traced by [`PlaneGraph`]; a labels layer covers every angle.
//! `prescribed_nonpointed` names one vertex. Only `n`, `edges`,
//! `rotations` and `outer_face` are required; optional fields follow them in
//! the order `coords`, `labels`, `prescribed_nonpointed`.

use std::str::FromStr;

use num::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cpt::CptLabeling;
use crate::geom::{Embedding, Point, Provenance};
use crate::plane_graph::{GraphError, PlaneGraph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("field `{field}`: {message}")]
    Field { field: &'static str, message: String },
    #[error("field `{field}`: {source}")]
    Graph {
        field: &'static str,
        #[source]
        source: GraphError,
    },
}

fn field_err(field: &'static str, message: impl Into<String>) -> ParseError {
    ParseError::Field { field, message: message.into() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub n: usize,
    pub edges: Vec<(VertexId, VertexId)>,
    pub rotations: Vec<Vec<VertexId>>,
    pub outer_face: Vec<VertexId>,
    #[serde(default)]
    pub coords: Option<Vec<(String, String)>>,
    #[serde(default)]
    pub labels: Option<Vec<(VertexId, usize, bool)>>,
    #[serde(default)]
    pub prescribed_nonpointed: Option<VertexId>,
}

/// A parsed and validated document.
#[derive(Clone, Debug)]
pub struct LoadedGraph {
    pub graph: PlaneGraph,
    pub embedding: Option<Embedding>,
    pub labeling: Option<CptLabeling>,
    pub prescribed_nonpointed: Option<VertexId>,
}

pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.contains('/') {
        BigRational::from_str(s).ok()
    } else {
        BigRational::from_str(&format!("{s}/1")).ok()
    }
}

impl GraphDocument {
    pub fn from_graph(g: &PlaneGraph) -> Self {
        GraphDocument {
            n: g.n(),
            edges: g.edges().to_vec(),
            rotations: (0..g.n()).map(|v| g.rotation(v).to_vec()).collect(),
            outer_face: g.outer_cycle_ccw(),
            coords: None,
            labels: None,
            prescribed_nonpointed: None,
        }
    }

    pub fn with_embedding(mut self, emb: &Embedding) -> Self {
        self.coords = Some(emb.points.iter().map(|p| (format_rational(p.x()), format_rational(p.y()))).collect());
        self
    }

    pub fn with_labeling(mut self, g: &PlaneGraph, lab: &CptLabeling) -> Self {
        self.labels = Some(
            (0..g.dart_count()).map(|d| (g.dart_origin(d), g.dart_face(d), lab.is_big(d))).collect(),
        );
        self
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        serde_json::from_str(text).map_err(|e| ParseError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// One top-level field per line, in a fixed order.
    pub fn to_text(&self) -> String {
        let mut fields = vec![
            ("n", compact(&self.n)),
            ("edges", compact(&self.edges)),
            ("rotations", compact(&self.rotations)),
            ("outer_face", compact(&self.outer_face)),
        ];
        if let Some(c) = &self.coords {
            fields.push(("coords", compact(c)));
        }
        if let Some(l) = &self.labels {
            fields.push(("labels", compact(l)));
        }
        if let Some(p) = &self.prescribed_nonpointed {
            fields.push(("prescribed_nonpointed", compact(p)));
        }
        let body: Vec<String> = fields.into_iter().map(|(k, v)| format!("  \"{k}\": {v}")).collect();
        format!("{{\n{}\n}}\n", body.join(",\n"))
    }

    pub fn load(&self) -> Result<LoadedGraph, ParseError> {
        if self.rotations.len() != self.n {
            return Err(field_err("rotations", format!("{} rotations for {} vertices", self.rotations.len(), self.n)));
        }
        let graph = PlaneGraph::build(self.n, &self.edges, self.rotations.clone(), &self.outer_face)
            .map_err(|source| ParseError::Graph { field: "rotations", source })?;
        let embedding = match &self.coords {
            None => None,
            Some(c) => {
                if c.len() != self.n {
                    return Err(field_err("coords", format!("{} points for {} vertices", c.len(), self.n)));
                }
                let mut pts = Vec::with_capacity(c.len());
                for (i, (x, y)) in c.iter().enumerate() {
                    let (Some(x), Some(y)) = (parse_rational(x), parse_rational(y)) else {
                        return Err(field_err("coords", format!("entry {i} is not a pair of rationals")));
                    };
                    pts.push(Point::new(x, y));
                }
                Some(Embedding::new(pts, Provenance::External))
            }
        };
        let labeling = match &self.labels {
            None => None,
            Some(entries) => Some(labels_to_labeling(&graph, entries)?),
        };
        if let Some(v) = self.prescribed_nonpointed {
            if v >= self.n {
                return Err(field_err("prescribed_nonpointed", format!("vertex {v} out of range")));
            }
        }
        Ok(LoadedGraph { graph, embedding, labeling, prescribed_nonpointed: self.prescribed_nonpointed })
    }
}

fn labels_to_labeling(g: &PlaneGraph, entries: &[(VertexId, usize, bool)]) -> Result<CptLabeling, ParseError> {
    let mut flags: Vec<Option<bool>> = vec![None; g.dart_count()];
    for &(v, f, big) in entries {
        if v >= g.n() || f >= g.faces().len() {
            return Err(field_err("labels", format!("[{v}, {f}] out of range")));
        }
        let mut at = g.darts_of(v).filter(|&d| g.dart_face(d) == f);
        let d = at.next().ok_or_else(|| field_err("labels", format!("vertex {v} is not on face {f}")))?;
        if at.next().is_some() {
            return Err(field_err("labels", format!("vertex {v} occurs twice on face {f}")));
        }
        if flags[d].replace(big).is_some() {
            return Err(field_err("labels", format!("angle [{v}, {f}] labeled twice")));
        }
    }
    let flags: Option<Vec<bool>> = flags.into_iter().collect();
    flags.map(CptLabeling::from_flags).ok_or_else(|| field_err("labels", "some angles are unlabeled"))
}

fn compact<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpt::assign_cpt;
    use crate::plane_graph::fixtures::*;

    const WORKED: &str = r#"{
  "n": 4,
  "edges": [[0,1],[0,2],[0,3],[1,2],[1,3]],
  "rotations": [[1,3,2],[2,3,0],[0,1],[0,1]],
  "outer_face": [0,1,2],
  "coords": [["0/1","0/1"],["4/1","0/1"],["2/1","3/1"],["2/1","1/1"]]
}
"#;

    #[test]
    fn worked_document_round_trips() {
        let doc = GraphDocument::parse(WORKED).unwrap();
        assert_eq!(doc.to_text(), WORKED);
        let loaded = doc.load().unwrap();
        assert_eq!(loaded.graph, four_vertex_laman());
        assert_eq!(loaded.embedding.unwrap().points[3], Point::from_ints(2, 1));
    }

    #[test]
    fn missing_rotations_is_an_error() {
        let text = r#"{"n": 3, "edges": [[0,1],[1,2],[0,2]], "outer_face": [0,1,2]}"#;
        match GraphDocument::parse(text) {
            Err(ParseError::Syntax { message, .. }) => assert!(message.contains("rotations")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = GraphDocument::parse("{\n  \"n\": 3,\n  \"edges\": [[0,1],\n}").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 4, .. }), "{err:?}");
    }

    #[test]
    fn labels_round_trip() {
        let g = four_vertex_laman();
        let lab = assign_cpt(&g, None).unwrap();
        let doc = GraphDocument::from_graph(&g).with_labeling(&g, &lab);
        let back = GraphDocument::parse(&doc.to_text()).unwrap().load().unwrap();
        assert_eq!(back.labeling, Some(lab));
    }

    #[test]
    fn bare_integers_are_accepted() {
        let text = WORKED.replace("\"4/1\"", "\"4\"");
        let emb = GraphDocument::parse(&text).unwrap().load().unwrap().embedding.unwrap();
        assert_eq!(emb.points[1], Point::from_ints(4, 0));
    }

    #[test]
    fn inconsistent_rotation_is_reported_by_field() {
        let text = WORKED.replace("[[1,3,2],[2,3,0]", "[[1,3,2],[2,0,3]");
        let err = GraphDocument::parse(&text).unwrap().load().unwrap_err();
        assert!(matches!(err, ParseError::Graph { field: "rotations", .. }), "{err:?}");
    }
}
