//! Mechanical checks of the structural facts about simple drawings of K_n.
//!
//! Every check returns a [`TheoremReport`]; a report passes exactly when it
//! carries no witnesses.

mod claims;

pub use claims::{
    analyze_vertex_deletion, check_vertex_deletion_claims, BoundaryPosition, ClaimError,
    EntryPoints, VertexDeletionAnalysis,
};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::drawing::{Edge, VertexId};
use crate::planarizer::{EdgeTrace, FaceId, NodeId, NodeLabel, PlaneMap, SegmentId};
use crate::sides::{side_containing, SidePartition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    /// An edge meets a face boundary in a connected set or in its two ends.
    ConnectedIntersection,
    /// Every face is the intersection of the sides of all 3-cycles holding it.
    FaceFromTriangles,
    /// No face boundary meets three open edges at a common vertex.
    NoThreeAtVertex,
    /// A face boundary has at most n edge-segments.
    SegmentBound,
    /// Crossing count and outer-face facts of a natural drawing.
    Natural,
    /// Structure of an edge at a deleted vertex against the faces of `D - v`.
    VertexDeletionClaims,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] = [
        TheoremId::ConnectedIntersection,
        TheoremId::FaceFromTriangles,
        TheoremId::NoThreeAtVertex,
        TheoremId::SegmentBound,
        TheoremId::Natural,
        TheoremId::VertexDeletionClaims,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::ConnectedIntersection => "t1",
            TheoremId::FaceFromTriangles => "t2",
            TheoremId::NoThreeAtVertex => "t3",
            TheoremId::SegmentBound => "segbound",
            TheoremId::Natural => "natural",
            TheoremId::VertexDeletionClaims => "claims",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| format!("unknown check {s:?}"))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub face: Option<FaceId>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub vertices: Vec<VertexId>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<Edge>,
    pub description: String,
}

impl Witness {
    pub fn new(description: impl Into<String>) -> Self {
        Self {
            face: None,
            vertices: Vec::new(),
            edges: Vec::new(),
            description: description.into(),
        }
    }

    pub fn face(mut self, f: FaceId) -> Self {
        self.face = Some(f);
        self
    }

    pub fn vertices(mut self, v: impl IntoIterator<Item = VertexId>) -> Self {
        self.vertices.extend(v);
        self
    }

    pub fn edges(mut self, e: impl IntoIterator<Item = Edge>) -> Self {
        self.edges.extend(e);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub faces: usize,
    pub crossings: usize,
    pub triangles: usize,
}

impl Counts {
    pub fn of(map: &PlaneMap) -> Self {
        let n = map.n();
        Self {
            faces: map.face_count(),
            crossings: map.crossing_count(),
            triangles: n * (n - 1) * (n - 2) / 6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub pass: bool,
    pub witnesses: Vec<Witness>,
    pub counts: Counts,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl TheoremReport {
    pub fn new(theorem: TheoremId, witnesses: Vec<Witness>, counts: Counts) -> Self {
        Self {
            theorem,
            pass: witnesses.is_empty(),
            witnesses,
            counts,
            note: None,
        }
    }

    fn with_note(mut self, note: &str) -> Self {
        self.note = Some(note.to_string());
        self
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Membership of an edge's nodes and segments in one face boundary, laid
/// out along the edge as `node_0, seg_0, node_1, ..., seg_k, node_{k+1}`.
fn boundary_marks(
    trace: &EdgeTrace,
    nodes_on: &BTreeSet<NodeId>,
    segments_on: &BTreeSet<SegmentId>,
) -> Vec<bool> {
    let mut marks = Vec::with_capacity(2 * trace.nodes.len() - 1);
    for (i, node) in trace.nodes.iter().enumerate() {
        marks.push(nodes_on.contains(node));
        if let Some(s) = trace.segments.get(i) {
            marks.push(segments_on.contains(s));
        }
    }
    marks
}

/// Shape of `e ∩ C` along the edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Intersection {
    Empty,
    Connected,
    BothEnds,
    Disconnected,
}

fn classify(marks: &[bool]) -> Intersection {
    let on: Vec<usize> = (0..marks.len()).filter(|&i| marks[i]).collect();
    match (on.first(), on.last()) {
        (None, _) | (_, None) => Intersection::Empty,
        (Some(&lo), Some(&hi)) if hi - lo + 1 == on.len() => Intersection::Connected,
        _ if on == [0, marks.len() - 1] => Intersection::BothEnds,
        _ => Intersection::Disconnected,
    }
}

/// For every face boundary `C` and every closed edge `e`, `e ∩ C` is
/// connected or exactly the two ends of `e`.
pub fn check_theorem1(map: &PlaneMap) -> TheoremReport {
    let traces: Vec<EdgeTrace> = map.edges().map(|e| map.edge_trace(e)).collect();
    let mut witnesses = Vec::new();
    for f in 0..map.face_count() {
        let nodes_on = map.face_nodes(f);
        let segments_on = map.face_segments(f);
        for trace in &traces {
            let marks = boundary_marks(trace, &nodes_on, &segments_on);
            if classify(&marks) == Intersection::Disconnected {
                let layout: String = marks.iter().map(|&m| if m { '#' } else { '.' }).collect();
                witnesses.push(
                    Witness::new(format!(
                        "edge {} meets the boundary in a disconnected set [{layout}]",
                        trace.edge
                    ))
                    .face(f)
                    .edges([trace.edge]),
                );
            }
        }
    }
    TheoremReport::new(TheoremId::ConnectedIntersection, witnesses, Counts::of(map)).with_note(
        "drawings with three or more edges through one crossing point are rejected as input",
    )
}

/// Intersection over `partitions` of the side containing face `r`.
pub fn side_intersection(
    map: &PlaneMap,
    partitions: &[SidePartition],
    r: FaceId,
) -> BTreeSet<FaceId> {
    let mut acc: BTreeSet<FaceId> = (0..map.face_count()).collect();
    for p in partitions {
        match side_containing(p, r) {
            Ok(side) => acc.retain(|f| side.contains(f)),
            Err(_) => acc.clear(),
        }
    }
    acc
}

/// Every face equals the intersection of its sides over all 3-cycles.
pub fn check_theorem2(map: &PlaneMap, partitions: &[SidePartition]) -> TheoremReport {
    let mut witnesses = Vec::new();
    for r in 0..map.face_count() {
        let inter = side_intersection(map, partitions, r);
        if !inter.contains(&r) {
            witnesses.push(Witness::new(format!("face {r} is not inside its own sides")).face(r));
        }
        let extra: Vec<FaceId> = inter.iter().copied().filter(|&f| f != r).collect();
        if !extra.is_empty() {
            witnesses.push(
                Witness::new(format!(
                    "faces {extra:?} survive every side containing face {r}"
                ))
                .face(r),
            );
        }
    }
    TheoremReport::new(TheoremId::FaceFromTriangles, witnesses, Counts::of(map))
}

/// No face boundary meets three open edges at one vertex.
pub fn check_theorem3(map: &PlaneMap) -> TheoremReport {
    let n = map.n();
    let mut witnesses = Vec::new();
    for f in 0..map.face_count() {
        let nodes_on = map.face_nodes(f);
        let segments_on = map.face_segments(f);
        for v in 1..=n {
            let meeting: Vec<Edge> = (1..=n)
                .filter(|&w| w != v)
                .map(|w| Edge::new(v, w))
                .filter(|&e| {
                    let trace = map.edge_trace(e);
                    let interior_node = trace.nodes[1..trace.nodes.len() - 1]
                        .iter()
                        .any(|x| nodes_on.contains(x));
                    interior_node || trace.segments.iter().any(|s| segments_on.contains(s))
                })
                .collect();
            if meeting.len() > 2 {
                witnesses.push(
                    Witness::new(format!(
                        "{} open edges at vertex {v} meet the boundary",
                        meeting.len()
                    ))
                    .face(f)
                    .vertices([v])
                    .edges(meeting),
                );
            }
        }
    }
    TheoremReport::new(TheoremId::NoThreeAtVertex, witnesses, Counts::of(map))
}

/// Every face boundary consists of at most n edge-segments.
pub fn check_segment_bound(map: &PlaneMap) -> TheoremReport {
    let n = map.n();
    let witnesses = map
        .faces()
        .iter()
        .filter(|f| f.run_count() > n)
        .map(|f| {
            Witness::new(format!(
                "{} edge-segments on the boundary, more than {n}",
                f.run_count()
            ))
            .face(f.id)
        })
        .collect();
    TheoremReport::new(TheoremId::SegmentBound, witnesses, Counts::of(map))
}

/// Faces bounded by a Hamilton cycle: `n` boundary darts, all between
/// vertex nodes.
pub fn hamiltonian_faces(map: &PlaneMap) -> Vec<FaceId> {
    let n = map.n();
    map.faces()
        .iter()
        .filter(|f| {
            f.len() == n
                && f.boundary
                    .iter()
                    .all(|&d| matches!(map.node_label(map.dart(d).node), NodeLabel::Vertex(_)))
        })
        .map(|f| f.id)
        .collect()
}

/// Edges not on face `f` whose closure meets it in anything but their ends.
fn chords_touching_inside(map: &PlaneMap, f: FaceId) -> Vec<Edge> {
    let nodes_on = map.face_nodes(f);
    let segments_on = map.face_segments(f);
    let hamilton = &map.face(f).incident_edges;
    map.edges()
        .filter(|e| !hamilton.contains(e))
        .filter(|&e| {
            let marks = boundary_marks(&map.edge_trace(e), &nodes_on, &segments_on);
            classify(&marks) != Intersection::BothEnds
        })
        .collect()
}

/// The face witnessing that the drawing is natural, if any.
pub fn natural_face(map: &PlaneMap) -> Option<FaceId> {
    hamiltonian_faces(map)
        .into_iter()
        .find(|&f| chords_touching_inside(map, f).is_empty())
}

/// Checks a drawing claimed to be natural: C(n,4) crossings, a face bounded
/// by a Hamilton cycle with one segment per edge, and every other edge
/// meeting that face's closure in exactly its two ends.
pub fn check_natural_properties(map: &PlaneMap, n: usize) -> TheoremReport {
    let mut witnesses = Vec::new();
    if map.n() != n {
        witnesses.push(Witness::new(format!(
            "map has {} vertices, expected {n}",
            map.n()
        )));
    }
    let expected = binomial(n, 4);
    if map.crossing_count() != expected {
        witnesses.push(Witness::new(format!(
            "{} crossings, a natural drawing has C({n},4) = {expected}",
            map.crossing_count()
        )));
    }
    let candidates = hamiltonian_faces(map);
    if candidates.is_empty() {
        witnesses.push(Witness::new("no face is bounded by a Hamilton cycle"));
    } else if natural_face(map).is_none() {
        let f = candidates[0];
        let bad = chords_touching_inside(map, f);
        witnesses.push(
            Witness::new("edges off the Hamilton face meet its closure beyond their two ends")
                .face(f)
                .edges(bad),
        );
    }
    TheoremReport::new(TheoremId::Natural, witnesses, Counts::of(map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::GoodDrawing;
    use crate::fixtures;
    use crate::geometry::{generate_convex, generate_general};
    use crate::planarizer::build_plane_map;
    use crate::sides::all_side_partitions;

    fn natural_map(n: usize, seed: u64) -> PlaneMap {
        build_plane_map(&GoodDrawing::from_geometric(&generate_convex(n, seed)).unwrap()).unwrap()
    }

    #[test]
    fn classify_shapes() {
        assert_eq!(classify(&[false, false, false]), Intersection::Empty);
        assert_eq!(classify(&[true, true, true]), Intersection::Connected);
        assert_eq!(
            classify(&[false, false, true, false, false]),
            Intersection::Connected
        );
        assert_eq!(classify(&[true, false, true]), Intersection::BothEnds);
        assert_eq!(
            classify(&[true, false, false, true, true]),
            Intersection::Disconnected
        );
        assert_eq!(
            classify(&[true, false, false, false, true, true, true]),
            Intersection::Disconnected
        );
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 4), 1);
        assert_eq!(binomial(6, 4), 15);
        assert_eq!(binomial(10, 4), 210);
        assert_eq!(binomial(3, 4), 0);
    }

    #[test]
    fn theorem1_natural_chords_meet_outer_face_in_ends() {
        let m = natural_map(6, 8);
        let f = natural_face(&m).expect("convex drawing is natural");
        let nodes_on = m.face_nodes(f);
        let segments_on = m.face_segments(f);
        for e in m.edges().filter(|e| !m.face(f).incident_edges.contains(e)) {
            let marks = boundary_marks(&m.edge_trace(e), &nodes_on, &segments_on);
            assert_eq!(classify(&marks), Intersection::BothEnds, "{e}");
        }
        assert!(check_theorem1(&m).pass);
    }

    #[test]
    fn theorem1_small_cases() {
        let m = build_plane_map(&fixtures::k3()).unwrap();
        for f in 0..2 {
            let nodes_on = m.face_nodes(f);
            let segments_on = m.face_segments(f);
            for e in m.edges() {
                let marks = boundary_marks(&m.edge_trace(e), &nodes_on, &segments_on);
                assert_eq!(marks, vec![true, true, true]);
            }
        }
        assert!(check_theorem1(&m).pass);
        assert!(check_theorem1(&build_plane_map(&fixtures::one_crossing_k4()).unwrap()).pass);
    }

    #[test]
    fn theorem2_small_cases() {
        for d in [
            fixtures::k3(),
            fixtures::planar_k4(),
            fixtures::one_crossing_k4(),
        ] {
            let m = build_plane_map(&d).unwrap();
            let parts = all_side_partitions(&m).unwrap();
            let report = check_theorem2(&m, &parts);
            assert!(report.pass, "{report:?}");
        }
        let m = natural_map(6, 42);
        assert_eq!(m.face_count(), 26);
        let parts = all_side_partitions(&m).unwrap();
        assert!(check_theorem2(&m, &parts).pass);
    }

    #[test]
    fn theorem2_needs_all_triangles() {
        // With one triangle only, K_4 faces are not separated.
        let m = build_plane_map(&fixtures::planar_k4()).unwrap();
        let parts = all_side_partitions(&m).unwrap();
        let report = check_theorem2(&m, &parts[..1]);
        assert!(!report.pass);
        assert!(!report.witnesses.is_empty());
    }

    #[test]
    fn theorem3_small_cases() {
        let m = build_plane_map(&fixtures::one_crossing_k4()).unwrap();
        assert!(check_theorem3(&m).pass);
        let m = build_plane_map(&fixtures::planar_k4()).unwrap();
        // outer face is bounded by 1-2-3 and touches none of 4's edges
        let outer = (0..4)
            .find(|&f| !m.face_nodes(f).contains(&m.vertex_node(4)))
            .unwrap();
        let segs = m.face_segments(outer);
        for w in 1..=3 {
            assert!(m.segments_of(Edge::new(w, 4)).all(|s| !segs.contains(&s)));
        }
        assert!(check_theorem3(&m).pass);
        assert!(check_theorem3(&natural_map(7, 3)).pass);
    }

    #[test]
    fn segment_bound_cases() {
        let m = natural_map(7, 1);
        let f = natural_face(&m).unwrap();
        assert_eq!(m.face(f).run_count(), 7);
        assert!(check_segment_bound(&m).pass);
        let m = build_plane_map(&fixtures::k3()).unwrap();
        assert!(m.faces().iter().all(|f| f.run_count() == 3));
        let m = build_plane_map(&GoodDrawing::from_geometric(&generate_general(8, 5)).unwrap())
            .unwrap();
        assert!(check_segment_bound(&m).pass);
    }

    #[test]
    fn natural_properties() {
        let m = natural_map(4, 2);
        assert_eq!(m.crossing_count(), 1);
        assert!(check_natural_properties(&m, 4).pass);
        let f = natural_face(&m).unwrap();
        assert_eq!(m.face(f).incident_edges.len(), 4);
        assert!(check_natural_properties(&natural_map(5, 2), 5).pass);

        let planar = build_plane_map(&fixtures::planar_k4()).unwrap();
        let report = check_natural_properties(&planar, 4);
        assert!(!report.pass);
        assert!(report
            .witnesses
            .iter()
            .any(|w| w.description.contains("crossings")));
        assert!(report
            .witnesses
            .iter()
            .any(|w| w.description.contains("Hamilton")));
    }

    #[test]
    fn report_json_shape() {
        let m = build_plane_map(&fixtures::k3()).unwrap();
        let v = serde_json::to_value(check_segment_bound(&m)).unwrap();
        assert_eq!(v["theorem"], "segbound");
        assert_eq!(v["pass"], true);
        assert_eq!(v["counts"]["faces"], 2);
        assert_eq!(v["counts"]["triangles"], 1);
        assert_eq!(
            "claims".parse::<TheoremId>(),
            Ok(TheoremId::VertexDeletionClaims)
        );
        assert!("t9".parse::<TheoremId>().is_err());
    }
}
