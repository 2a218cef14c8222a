//! Planarization of a drawing as a combinatorial map.
//!
//! Nodes are the vertices of K_n followed by the crossings. Each edge is cut
//! at its crossings into segments; segment `s` owns darts `2s` (pointing
//! away from the edge's smaller endpoint) and `2s + 1`. Rotations are
//! counter-clockwise.
//!
//! Faces are orbits of `d -> pred(twin(d))`, where `pred` is the
//! rotation-predecessor at the node `twin(d)` leaves from. With
//! counter-clockwise rotations every face lies to the left of its walk, so
//! the wedge running counter-clockwise from dart `r` to its rotation
//! successor belongs to the face of `r`.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};
use thiserror::Error;

use crate::drawing::{
    local_violations, CrossingId, CrossingSign, Edge, GoodDrawing, ValidationReport, VertexId,
};

pub type NodeId = usize;
pub type DartId = usize;
pub type FaceId = usize;
pub type SegmentId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeLabel {
    Vertex(VertexId),
    Crossing(CrossingId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dart {
    pub node: NodeId,
    pub edge: Edge,
    /// Segment index along `edge`, counted from its smaller endpoint.
    pub index: usize,
    pub twin: DartId,
}

impl Dart {
    pub fn segment(&self) -> SegmentId {
        self.twin / 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    /// Darts in walk order; dart `i + 1` follows dart `i`, cyclically.
    pub boundary: Vec<DartId>,
    /// Edges with at least one segment on the boundary.
    pub incident_edges: BTreeSet<Edge>,
    /// Maximal boundary runs per edge.
    pub segments_per_edge: BTreeMap<Edge, usize>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    /// Total number of edge-segment runs on the boundary.
    pub fn run_count(&self) -> usize {
        self.segments_per_edge.values().sum()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanarizeError {
    #[error("drawing fails local validation ({} violations)", .0.violations.len())]
    Invalid(ValidationReport),
    #[error("non-spherical: V - E + F = {nodes} - {segments} + {faces} != 2")]
    NonSpherical {
        nodes: usize,
        segments: usize,
        faces: usize,
    },
    #[error("boundary-not-simple: face {face} visits node {node} twice")]
    BoundaryNotSimple { face: FaceId, node: NodeId },
}

/// A node-by-node walk of one edge, from its smaller endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeTrace {
    pub edge: Edge,
    /// `segments.len() + 1` nodes; the first and last are the endpoints.
    pub nodes: Vec<NodeId>,
    pub segments: Vec<SegmentId>,
}

#[derive(Clone, Debug)]
pub struct PlaneMap {
    n: usize,
    nodes: Vec<NodeLabel>,
    darts: Vec<Dart>,
    rotation: Vec<Vec<DartId>>,
    rotation_pos: Vec<usize>,
    /// First segment id and segment count for each edge.
    edge_segments: BTreeMap<Edge, (SegmentId, usize)>,
    crossing_edges: Vec<[Edge; 2]>,
    faces: Vec<Face>,
    face_of: Vec<FaceId>,
}

impl PlaneMap {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn crossing_count(&self) -> usize {
        self.crossing_edges.len()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn segment_count(&self) -> usize {
        self.darts.len() / 2
    }

    pub fn nodes(&self) -> &[NodeLabel] {
        &self.nodes
    }

    pub fn node_label(&self, node: NodeId) -> NodeLabel {
        self.nodes[node]
    }

    pub fn vertex_node(&self, v: VertexId) -> NodeId {
        v - 1
    }

    pub fn crossing_node(&self, c: CrossingId) -> NodeId {
        self.n + c
    }

    /// Edges meeting at a crossing node.
    pub fn crossing_edges(&self, c: CrossingId) -> [Edge; 2] {
        self.crossing_edges[c]
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn dart(&self, d: DartId) -> &Dart {
        &self.darts[d]
    }

    /// Node the dart points to.
    pub fn head(&self, d: DartId) -> NodeId {
        self.darts[self.darts[d].twin].node
    }

    /// Counter-clockwise darts leaving `node`.
    pub fn rotation(&self, node: NodeId) -> &[DartId] {
        &self.rotation[node]
    }

    pub fn rotation_succ(&self, d: DartId) -> DartId {
        let rot = &self.rotation[self.darts[d].node];
        rot[(self.rotation_pos[d] + 1) % rot.len()]
    }

    pub fn rotation_pred(&self, d: DartId) -> DartId {
        let rot = &self.rotation[self.darts[d].node];
        rot[(self.rotation_pos[d] + rot.len() - 1) % rot.len()]
    }

    /// Face-successor permutation.
    pub fn next_on_face(&self, d: DartId) -> DartId {
        self.rotation_pred(self.darts[d].twin)
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f]
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn face_of(&self, d: DartId) -> FaceId {
        self.face_of[d]
    }

    pub fn segment_darts(&self, s: SegmentId) -> [DartId; 2] {
        [2 * s, 2 * s + 1]
    }

    /// The two faces on either side of a segment: left of the forward dart,
    /// then left of the backward dart.
    pub fn segment_faces(&self, s: SegmentId) -> [FaceId; 2] {
        [self.face_of[2 * s], self.face_of[2 * s + 1]]
    }

    pub fn segments_of(&self, e: Edge) -> impl Iterator<Item = SegmentId> {
        let (start, count) = self.edge_segments[&e];
        start..start + count
    }

    pub fn segment(&self, e: Edge, index: usize) -> SegmentId {
        let (start, count) = self.edge_segments[&e];
        assert!(index < count, "segment {index} of {e} out of range");
        start + index
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edge_segments.keys().copied()
    }

    /// Dart leaving vertex `v` along the edge to `w`.
    pub fn vertex_dart(&self, v: VertexId, w: VertexId) -> DartId {
        let e = Edge::new(v, w);
        let (start, count) = self.edge_segments[&e];
        if v == e.lo() {
            2 * start
        } else {
            2 * (start + count - 1) + 1
        }
    }

    pub fn edge_trace(&self, e: Edge) -> EdgeTrace {
        let segments: Vec<SegmentId> = self.segments_of(e).collect();
        let mut nodes = Vec::with_capacity(segments.len() + 1);
        nodes.push(self.vertex_node(e.lo()));
        for &s in &segments {
            nodes.push(self.head(2 * s));
        }
        EdgeTrace {
            edge: e,
            nodes,
            segments,
        }
    }

    /// Nodes visited by a face's boundary walk.
    pub fn face_nodes(&self, f: FaceId) -> BTreeSet<NodeId> {
        self.faces[f]
            .boundary
            .iter()
            .map(|&d| self.darts[d].node)
            .collect()
    }

    /// Segments with a dart on the face boundary.
    pub fn face_segments(&self, f: FaceId) -> BTreeSet<SegmentId> {
        self.faces[f].boundary.iter().map(|&d| d / 2).collect()
    }

    /// Debug export: node labels, darts with twin and rotation position,
    /// faces as dart cycles.
    pub fn to_json(&self) -> Value {
        let nodes: Vec<Value> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(id, label)| match label {
                NodeLabel::Vertex(v) => {
                    json!({"id": id, "vertex": v, "rotation": self.rotation[id]})
                }
                NodeLabel::Crossing(c) => json!({
                    "id": id,
                    "crossing": c,
                    "edges": self.crossing_edges[*c],
                    "rotation": self.rotation[id],
                }),
            })
            .collect();
        let darts: Vec<Value> = self
            .darts
            .iter()
            .enumerate()
            .map(|(id, d)| {
                json!({
                    "id": id,
                    "node": d.node,
                    "edge": d.edge,
                    "segment": d.index,
                    "twin": d.twin,
                    "rotation_index": self.rotation_pos[id],
                    "face": self.face_of[id],
                })
            })
            .collect();
        let faces: Vec<Value> = self
            .faces
            .iter()
            .map(|f| json!({"id": f.id, "boundary": f.boundary}))
            .collect();
        json!({"n": self.n, "nodes": nodes, "darts": darts, "faces": faces})
    }
}

/// Assembles and traces the plane map of a drawing that passes the local
/// checks of the validator.
pub(crate) fn assemble(d: &GoodDrawing) -> Result<PlaneMap, PlanarizeError> {
    let n = d.n();
    let mut nodes: Vec<NodeLabel> = (1..=n).map(NodeLabel::Vertex).collect();
    nodes.extend((0..d.crossing_count()).map(NodeLabel::Crossing));
    let crossing_node = |c: CrossingId| n + c;

    let mut darts = Vec::new();
    let mut edge_segments = BTreeMap::new();
    // position of crossing c along edge e
    let mut position: BTreeMap<(Edge, CrossingId), usize> = BTreeMap::new();
    for e in d.edges() {
        let list = d.crossings_along(e);
        let mut path = Vec::with_capacity(list.len() + 2);
        path.push(e.lo() - 1);
        for (i, &c) in list.iter().enumerate() {
            position.insert((e, c), i);
            path.push(crossing_node(c));
        }
        path.push(e.hi() - 1);
        edge_segments.insert(e, (darts.len() / 2, list.len() + 1));
        for (index, pair) in path.windows(2).enumerate() {
            let fwd = darts.len();
            darts.push(Dart {
                node: pair[0],
                edge: e,
                index,
                twin: fwd + 1,
            });
            darts.push(Dart {
                node: pair[1],
                edge: e,
                index,
                twin: fwd,
            });
        }
    }

    let seg = |e: Edge, index: usize| edge_segments[&e].0 + index;
    let mut rotation: Vec<Vec<DartId>> = vec![Vec::new(); nodes.len()];
    for v in 1..=n {
        rotation[v - 1] = d
            .rotation(v)
            .iter()
            .map(|&w| {
                let e = Edge::new(v, w);
                let (start, count) = edge_segments[&e];
                if v == e.lo() {
                    2 * start
                } else {
                    2 * (start + count - 1) + 1
                }
            })
            .collect();
    }
    for (c, crossing) in d.crossings().iter().enumerate() {
        let [e, f] = crossing.edges();
        let (i, j) = (position[&(e, c)], position[&(f, c)]);
        let e_plus = 2 * seg(e, i + 1);
        let e_minus = 2 * seg(e, i) + 1;
        let f_plus = 2 * seg(f, j + 1);
        let f_minus = 2 * seg(f, j) + 1;
        rotation[crossing_node(c)] = match crossing.sign() {
            CrossingSign::Positive => vec![e_plus, f_plus, e_minus, f_minus],
            CrossingSign::Negative => vec![e_plus, f_minus, e_minus, f_plus],
        };
    }
    let mut rotation_pos = vec![0; darts.len()];
    for rot in &rotation {
        for (i, &dart) in rot.iter().enumerate() {
            rotation_pos[dart] = i;
        }
    }

    let mut map = PlaneMap {
        n,
        nodes,
        darts,
        rotation,
        rotation_pos,
        edge_segments,
        crossing_edges: d.crossings().iter().map(|c| c.edges()).collect(),
        faces: Vec::new(),
        face_of: Vec::new(),
    };

    let orbits = face_orbits(&map);
    let (v, e, f) = (map.node_count(), map.segment_count(), orbits.len());
    if v + f != e + 2 {
        return Err(PlanarizeError::NonSpherical {
            nodes: v,
            segments: e,
            faces: f,
        });
    }
    let faces = faces_from_orbits(&map, orbits)?;
    let mut face_of = vec![0; map.darts.len()];
    for face in &faces {
        for &dart in &face.boundary {
            face_of[dart] = face.id;
        }
    }
    map.faces = faces;
    map.face_of = face_of;
    Ok(map)
}

/// Planarizes a drawing.
pub fn build_plane_map(d: &GoodDrawing) -> Result<PlaneMap, PlanarizeError> {
    let violations = local_violations(d);
    if !violations.is_empty() {
        return Err(PlanarizeError::Invalid(ValidationReport {
            ok: false,
            violations,
        }));
    }
    assemble(d)
}

fn face_orbits(map: &PlaneMap) -> Vec<Vec<DartId>> {
    let mut seen = vec![false; map.darts.len()];
    let mut orbits = Vec::new();
    for start in 0..map.darts.len() {
        if seen[start] {
            continue;
        }
        let mut walk = Vec::new();
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            walk.push(d);
            d = map.next_on_face(d);
        }
        orbits.push(walk);
    }
    orbits
}

fn faces_from_orbits(
    map: &PlaneMap,
    orbits: Vec<Vec<DartId>>,
) -> Result<Vec<Face>, PlanarizeError> {
    let mut faces = Vec::with_capacity(orbits.len());
    for (id, boundary) in orbits.into_iter().enumerate() {
        let mut visited = BTreeSet::new();
        for &d in &boundary {
            let node = map.darts[d].node;
            if map.n >= 3 && !visited.insert(node) {
                return Err(PlanarizeError::BoundaryNotSimple { face: id, node });
            }
        }
        let edge_at = |i: usize| map.darts[boundary[i]].edge;
        let len = boundary.len();
        let mut segments_per_edge: BTreeMap<Edge, usize> = BTreeMap::new();
        let mut incident_edges = BTreeSet::new();
        for i in 0..len {
            let e = edge_at(i);
            incident_edges.insert(e);
            if edge_at((i + len - 1) % len) != e {
                *segments_per_edge.entry(e).or_default() += 1;
            }
        }
        if segments_per_edge.is_empty() && len > 0 {
            segments_per_edge.insert(edge_at(0), 1);
        }
        faces.push(Face {
            id,
            boundary,
            incident_edges,
            segments_per_edge,
        });
    }
    Ok(faces)
}

/// Traces the faces of a map from its rotations alone.
pub fn trace_faces(map: &PlaneMap) -> Result<Vec<Face>, PlanarizeError> {
    faces_from_orbits(map, face_orbits(map))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualEdge {
    pub faces: (FaceId, FaceId),
    pub segment: SegmentId,
    pub edge: Edge,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    pub face_count: usize,
    pub edges: Vec<DualEdge>,
}

impl DualGraph {
    pub fn degree(&self, f: FaceId) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.faces.0 == f) + usize::from(e.faces.1 == f))
            .sum()
    }

    pub fn is_connected(&self) -> bool {
        if self.face_count == 0 {
            return true;
        }
        let mut uf = UnionFind::new(self.face_count);
        for e in &self.edges {
            uf.union(e.faces.0, e.faces.1);
        }
        uf.components() == 1
    }
}

/// One dual edge per segment, joining the faces on its two sides.
pub fn dual_graph(map: &PlaneMap) -> DualGraph {
    let edges = (0..map.segment_count())
        .map(|s| {
            let dart = map.dart(2 * s);
            let [a, b] = map.segment_faces(s);
            DualEdge {
                faces: (a, b),
                segment: s,
                edge: dart.edge,
                index: dart.index,
            }
        })
        .collect();
    DualGraph {
        face_count: map.face_count(),
        edges,
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    pub(crate) fn components(&mut self) -> usize {
        (0..self.parent.len())
            .filter(|&x| self.find(x) == x)
            .count()
    }
}

/// How `D - v` relates to `D`.
#[derive(Clone, Debug)]
pub(crate) struct Restriction {
    pub drawing: GoodDrawing,
    /// Old vertex id to new, `None` for the removed vertex.
    pub vertex_map: Vec<Option<VertexId>>,
    /// Old crossing id to new, `None` for crossings on edges at the removed
    /// vertex.
    pub crossing_map: Vec<Option<CrossingId>>,
}

pub(crate) fn restrict(d: &GoodDrawing, v: VertexId) -> Restriction {
    let n = d.n();
    assert!(n >= 4, "deleting a vertex needs n >= 4");
    let vertex_map: Vec<Option<VertexId>> = (1..=n)
        .map(|w| match w.cmp(&v) {
            std::cmp::Ordering::Less => Some(w),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(w - 1),
        })
        .collect();
    let map_v = |w: VertexId| vertex_map[w - 1].expect("vertex kept");
    let map_e = |e: Edge| Edge::new(map_v(e.lo()), map_v(e.hi()));

    let mut crossing_map = vec![None; d.crossing_count()];
    let mut crossings = Vec::new();
    for (c, crossing) in d.crossings().iter().enumerate() {
        let [e, f] = crossing.edges();
        if e.contains(v) || f.contains(v) {
            continue;
        }
        crossing_map[c] = Some(crossings.len());
        // Relabeling by a monotone map keeps edge directions and pair order.
        crossings.push(crate::drawing::Crossing::new(
            map_e(e),
            map_e(f),
            crossing.sign(),
        ));
    }
    let rotation = (1..=n)
        .filter(|&w| w != v)
        .map(|w| {
            d.rotation(w)
                .iter()
                .filter(|&&x| x != v)
                .map(|&x| map_v(x))
                .collect()
        })
        .collect();
    let order = d
        .order_map()
        .iter()
        .filter(|(e, _)| !e.contains(v))
        .map(|(&e, list)| {
            (
                map_e(e),
                list.iter().filter_map(|&c| crossing_map[c]).collect(),
            )
        })
        .collect();
    let drawing = GoodDrawing::from_parts(n - 1, rotation, crossings, order)
        .expect("restriction keeps ids in range");
    Restriction {
        drawing,
        vertex_map,
        crossing_map,
    }
}

/// The drawing of K_{n-1} obtained by deleting `v`; vertices above `v`
/// shift down by one.
pub fn restrict_delete_vertex(d: &GoodDrawing, v: VertexId) -> GoodDrawing {
    restrict(d, v).drawing
}
