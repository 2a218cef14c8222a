//! JSON interchange format for [`GoodDrawing`].
//!
//! ```json
//! {
//!   "n": 4,
//!   "rotation": {"1": [2, 3, 4], "2": [1, 3, 4], ...},
//!   "crossings": [{"edges": [[1, 3], [2, 4]], "sign": 1}],
//!   "order": {"1-2": [], "1-3": [0], ...}
//! }
//! ```
//!
//! Rotations are counter-clockwise and start at the smallest neighbour.
//! A crossing's sign is relative to its edge pair in sorted order, each
//! edge directed from its smaller endpoint; see [`CrossingSign`].

use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::drawing::{Crossing, CrossingSign, Edge, GoodDrawing, StructuralError, VertexId};

#[derive(Debug, Error)]
pub enum DecodeError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("missing-sign: {field} has no sign")]
    MissingSign { field: String },
    #[error("bad-sign: {field} = {value}, expected 1 or -1")]
    BadSign { field: String, value: i64 },
    #[error("bad-edge: {field}: {detail}")]
    BadEdge { field: String, detail: String },
    #[error("bad-vertex-key: rotation.{key}")]
    BadVertexKey { key: String },
    #[error("missing-rotation: rotation.{0} is absent")]
    MissingRotation(VertexId),
    #[error("structural: {0}")]
    Structural(#[from] StructuralError),
}

impl DecodeError {
    /// Short machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            DecodeError::Syntax { .. } => "syntax",
            DecodeError::MissingSign { .. } => "missing-sign",
            DecodeError::BadSign { .. } => "bad-sign",
            DecodeError::BadEdge { .. } => "bad-edge",
            DecodeError::BadVertexKey { .. } => "bad-vertex-key",
            DecodeError::MissingRotation(_) => "missing-rotation",
            DecodeError::Structural(_) => "structural",
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDrawing {
    n: usize,
    rotation: BTreeMap<String, Vec<VertexId>>,
    #[serde(default)]
    crossings: Vec<RawCrossing>,
    #[serde(default)]
    order: BTreeMap<String, Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCrossing {
    edges: [[VertexId; 2]; 2],
    sign: Option<i64>,
}

#[derive(Serialize)]
struct OutDrawing<'a> {
    n: usize,
    rotation: BTreeMap<VertexId, &'a [VertexId]>,
    crossings: Vec<OutCrossing>,
    order: OutOrder<'a>,
}

#[derive(Serialize)]
struct OutCrossing {
    edges: [Edge; 2],
    sign: i8,
}

struct OutOrder<'a>(&'a GoodDrawing);

impl Serialize for OutOrder<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let d = self.0;
        let mut map = s.serialize_map(None)?;
        for e in d.edges() {
            map.serialize_entry(&e.key(), d.crossings_along(e))?;
        }
        map.end()
    }
}

/// Serializes a drawing. Output is deterministic.
pub fn encode(d: &GoodDrawing) -> Vec<u8> {
    let out = OutDrawing {
        n: d.n(),
        rotation: (1..=d.n()).map(|v| (v, d.rotation(v))).collect(),
        crossings: d
            .crossings()
            .iter()
            .map(|c| OutCrossing {
                edges: c.edges(),
                sign: c.sign().as_i8(),
            })
            .collect(),
        order: OutOrder(d),
    };
    let mut bytes = serde_json::to_vec_pretty(&out).expect("drawing serializes");
    bytes.push(b'\n');
    bytes
}

fn edge_of(pair: [VertexId; 2], field: impl Fn() -> String) -> Result<Edge, DecodeError> {
    Edge::try_new(pair[0], pair[1]).ok_or_else(|| DecodeError::BadEdge {
        field: field(),
        detail: format!("endpoints {} and {} coincide", pair[0], pair[1]),
    })
}

pub fn decode(bytes: &[u8]) -> Result<GoodDrawing, DecodeError> {
    let raw: RawDrawing = serde_json::from_slice(bytes).map_err(|e| DecodeError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;

    let mut rotation_by_vertex = BTreeMap::new();
    for (key, nbrs) in raw.rotation {
        let v: VertexId = key
            .trim()
            .parse()
            .map_err(|_| DecodeError::BadVertexKey { key: key.clone() })?;
        rotation_by_vertex.insert(v, nbrs);
    }
    let mut rotation = Vec::with_capacity(raw.n);
    for v in 1..=raw.n {
        rotation.push(
            rotation_by_vertex
                .remove(&v)
                .ok_or(DecodeError::MissingRotation(v))?,
        );
    }
    if let Some((&v, _)) = rotation_by_vertex.iter().next() {
        return Err(DecodeError::BadVertexKey { key: v.to_string() });
    }

    let mut crossings = Vec::with_capacity(raw.crossings.len());
    for (i, rc) in raw.crossings.iter().enumerate() {
        let e = edge_of(rc.edges[0], || format!("crossings[{i}].edges[0]"))?;
        let f = edge_of(rc.edges[1], || format!("crossings[{i}].edges[1]"))?;
        let value = rc.sign.ok_or_else(|| DecodeError::MissingSign {
            field: format!("crossings[{i}]"),
        })?;
        let sign = CrossingSign::from_i64(value).ok_or_else(|| DecodeError::BadSign {
            field: format!("crossings[{i}].sign"),
            value,
        })?;
        crossings.push(Crossing::new(e, f, sign));
    }

    let mut order = BTreeMap::new();
    for (key, list) in raw.order {
        let e = Edge::parse_key(&key).ok_or_else(|| DecodeError::BadEdge {
            field: format!("order.{key}"),
            detail: "expected a key of the form \"a-b\" with a != b".into(),
        })?;
        if e.key() != key {
            return Err(DecodeError::BadEdge {
                field: format!("order.{key}"),
                detail: format!(
                    "edge keys are written smaller endpoint first, as \"{}\"",
                    e.key()
                ),
            });
        }
        order.insert(e, list);
    }

    Ok(GoodDrawing::from_parts(raw.n, rotation, crossings, order)?)
}
