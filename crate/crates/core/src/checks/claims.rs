//! How the edges at a vertex `v` pass through the faces of `D - v`.
//!
//! Each edge `vw` is cut by its crossings into pieces; every piece lies in
//! one face of `D - v`. Residence is computed without geometry: the piece
//! ending at `w` sits in the wedge of `w` where `vw` was removed, and each
//! crossing moves the walk to the other side of the crossed segment. The
//! piece at `v` falls out last, and all edges at `v` must agree on it.

use std::collections::BTreeMap;

use thiserror::Error;

use super::{Counts, TheoremId, TheoremReport, Witness};
use crate::drawing::{CrossingId, Edge, GoodDrawing, VertexId};
use crate::planarizer::{build_plane_map, restrict, DartId, FaceId, PlanarizeError, PlaneMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClaimError {
    #[error("claims need n >= 4, got {0}")]
    TooSmall(usize),
    #[error(transparent)]
    Planarize(#[from] PlanarizeError),
    #[error("position-location failure: {0}")]
    Location(String),
}

/// A point of a face boundary walk: dart index in the walk, then rank along
/// that dart (0 is the dart's starting node).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BoundaryPosition {
    pub dart_index: usize,
    pub offset: usize,
}

/// Where an edge at `v` enters and leaves a face, in boundary order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EntryPoints {
    pub edge: Edge,
    /// First point of the boundary reached from `v`.
    pub first: BoundaryPosition,
    pub second: BoundaryPosition,
}

/// One face `R'` of `D - v` seen from the deleted vertex `v`. Edges use the
/// vertex ids of `D`; face ids refer to the plane map of `D - v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexDeletionAnalysis {
    pub v: VertexId,
    pub face: FaceId,
    /// `v` lies inside this face.
    pub contains_v: bool,
    /// Number of components of `e ∩ R'` for each edge `e` at `v`.
    pub components: BTreeMap<Edge, usize>,
    /// Edges at `v` whose interior meets `R'`.
    pub x: Vec<Edge>,
    /// Entry and exit points for edges of `x` with one component, only when
    /// `v` is outside the face.
    pub entries: Vec<EntryPoints>,
}

struct Piece {
    face: FaceId,
}

/// A crossing of an edge at `v` with an edge `f` of `D - v`, located on
/// the segment of `f` in the plane map of `D - v`.
struct Hit {
    segment: usize,
    /// Index of the crossing in `f`'s full list in `D`.
    rank: usize,
    len: usize,
}

struct EdgeWalk {
    edge: Edge,
    w: VertexId,
    hits: Vec<Hit>,
    pieces: Vec<Piece>,
}

fn walk_edge(
    d: &GoodDrawing,
    v: VertexId,
    w: VertexId,
    map: &PlaneMap,
    vertex_map: &[Option<VertexId>],
    crossing_map: &[Option<CrossingId>],
) -> Result<EdgeWalk, ClaimError> {
    let e = Edge::new(v, w);
    let new_v = |x: VertexId| vertex_map[x - 1].expect("kept vertex");

    let mut hits = Vec::new();
    for c in d.crossings_from(e, v) {
        let f = d.crossings()[c].partner(e);
        let list = d.crossings_along(f);
        let rank = list
            .iter()
            .position(|&x| x == c)
            .expect("validated drawing");
        let index = list[..rank]
            .iter()
            .filter(|&&x| crossing_map[x].is_some())
            .count();
        let f_new = Edge::new(new_v(f.lo()), new_v(f.hi()));
        hits.push(Hit {
            segment: map.segment(f_new, index),
            rank,
            len: list.len(),
        });
    }

    // The wedge at w that held vw runs counter-clockwise from the
    // predecessor of v in w's rotation.
    let rot = d.rotation(w);
    let pos = rot.iter().position(|&x| x == v).expect("validated drawing");
    let pred = rot[(pos + rot.len() - 1) % rot.len()];
    let mut face = map.face_of(map.vertex_dart(new_v(w), new_v(pred)));

    let mut pieces = vec![Piece { face }];
    for hit in hits.iter().rev() {
        let [a, b] = map.segment_faces(hit.segment);
        if a == b {
            return Err(ClaimError::Location(format!(
                "segment {} crossed by {e} has face {a} on both sides",
                hit.segment
            )));
        }
        face = if face == a {
            b
        } else if face == b {
            a
        } else {
            return Err(ClaimError::Location(format!(
                "{e} reaches segment {} from face {face}, which is on neither side",
                hit.segment
            )));
        };
        pieces.push(Piece { face });
    }
    pieces.reverse();
    Ok(EdgeWalk {
        edge: e,
        w,
        hits,
        pieces,
    })
}

/// Per-face analysis of the edges at `v` against `D - v`.
pub fn analyze_vertex_deletion(
    d: &GoodDrawing,
    v: VertexId,
) -> Result<Vec<VertexDeletionAnalysis>, ClaimError> {
    let n = d.n();
    if n < 4 {
        return Err(ClaimError::TooSmall(n));
    }
    let r = restrict(d, v);
    let map = build_plane_map(&r.drawing)?;
    let new_v = |x: VertexId| r.vertex_map[x - 1].expect("kept vertex");

    let walks = (1..=n)
        .filter(|&w| w != v)
        .map(|w| walk_edge(d, v, w, &map, &r.vertex_map, &r.crossing_map))
        .collect::<Result<Vec<_>, _>>()?;
    let v_face = walks[0].pieces[0].face;
    if let Some(bad) = walks.iter().find(|wk| wk.pieces[0].face != v_face) {
        return Err(ClaimError::Location(format!(
            "edge {} places {v} in face {}, edge {} in face {v_face}",
            bad.edge, bad.pieces[0].face, walks[0].edge
        )));
    }

    let mut walk_pos: Vec<usize> = vec![0; map.darts().len()];
    for face in map.faces() {
        for (i, &dart) in face.boundary.iter().enumerate() {
            walk_pos[dart] = i;
        }
    }
    let on_face = |face: FaceId, dart: DartId| map.face_of(dart) == face;

    let locate_hit = |face: FaceId, hit: &Hit| -> Result<BoundaryPosition, ClaimError> {
        let [fwd, bwd] = map.segment_darts(hit.segment);
        let (dart, offset) = if on_face(face, fwd) {
            (fwd, 1 + hit.rank)
        } else if on_face(face, bwd) {
            (bwd, hit.len - hit.rank)
        } else {
            return Err(ClaimError::Location(format!(
                "segment {} is not on the boundary of face {face}",
                hit.segment
            )));
        };
        Ok(BoundaryPosition {
            dart_index: walk_pos[dart],
            offset,
        })
    };
    let locate_vertex = |face: FaceId, w: VertexId| -> Result<BoundaryPosition, ClaimError> {
        let node = map.vertex_node(new_v(w));
        map.face(face)
            .boundary
            .iter()
            .position(|&dart| map.dart(dart).node == node)
            .map(|i| BoundaryPosition {
                dart_index: i,
                offset: 0,
            })
            .ok_or_else(|| ClaimError::Location(format!("vertex {w} is not on face {face}")))
    };

    let mut out = Vec::with_capacity(map.face_count());
    for face in 0..map.face_count() {
        let contains_v = face == v_face;
        let mut components = BTreeMap::new();
        let mut x = Vec::new();
        let mut entries = Vec::new();
        for wk in &walks {
            let inside: Vec<usize> = (0..wk.pieces.len())
                .filter(|&i| wk.pieces[i].face == face)
                .collect();
            // Consecutive pieces never share a face, so each piece inside is
            // its own component.
            components.insert(wk.edge, inside.len());
            if inside.is_empty() {
                continue;
            }
            x.push(wk.edge);
            if contains_v || inside.len() != 1 {
                continue;
            }
            let j = inside[0];
            let first = locate_hit(face, &wk.hits[j - 1])?;
            let second = if j < wk.hits.len() {
                locate_hit(face, &wk.hits[j])?
            } else {
                locate_vertex(face, wk.w)?
            };
            entries.push(EntryPoints {
                edge: wk.edge,
                first,
                second,
            });
        }
        out.push(VertexDeletionAnalysis {
            v,
            face,
            contains_v,
            components,
            x,
            entries,
        });
    }
    Ok(out)
}

/// `e1, e2, f2, f1` in cyclic order along the boundary, in either direction.
fn nested(e: &EntryPoints, f: &EntryPoints) -> bool {
    let mut points = [(e.first, 0u8), (e.second, 1), (f.second, 2), (f.first, 3)];
    points.sort();
    let labels: Vec<u8> = points.iter().map(|p| p.1).collect();
    let start = labels.iter().position(|&l| l == 0).expect("present");
    let rotated: Vec<u8> = labels[start..]
        .iter()
        .chain(&labels[..start])
        .copied()
        .collect();
    rotated == [0, 1, 2, 3] || rotated == [0, 3, 2, 1]
}

/// Checks, for every vertex `v` and every face `R'` of `D - v`:
/// each edge at `v` meets `R'` in at most one component; when `v` is
/// outside `R'`, the entry and exit points of any two such edges are
/// nested along the boundary, and fewer than `n - 1` edges at `v` meet
/// `R'`.
pub fn check_vertex_deletion_claims(d: &GoodDrawing) -> Result<TheoremReport, ClaimError> {
    let n = d.n();
    let map = build_plane_map(d)?;
    let counts = Counts::of(&map);
    if n < 4 {
        return Ok(TheoremReport::new(
            TheoremId::VertexDeletionClaims,
            Vec::new(),
            counts,
        ));
    }
    let mut witnesses = Vec::new();
    for v in 1..=n {
        for a in analyze_vertex_deletion(d, v)? {
            for (&e, &k) in &a.components {
                if k > 1 {
                    witnesses.push(
                        Witness::new(format!(
                            "claim 1: edge {e} meets face {} of D-{v} in {k} components",
                            a.face
                        ))
                        .face(a.face)
                        .vertices([v])
                        .edges([e]),
                    );
                }
            }
            if a.contains_v {
                continue;
            }
            for (i, e) in a.entries.iter().enumerate() {
                for f in &a.entries[i + 1..] {
                    if !nested(e, f) {
                        witnesses.push(
                            Witness::new(format!(
                                "claim 2: entry points of {} and {} on face {} of D-{v} are not nested",
                                e.edge, f.edge, a.face
                            ))
                            .face(a.face)
                            .vertices([v])
                            .edges([e.edge, f.edge]),
                        );
                    }
                }
            }
            if a.x.len() >= n - 1 {
                witnesses.push(
                    Witness::new(format!(
                        "claim 3: all {} edges at {v} meet face {} of D-{v}",
                        a.x.len(),
                        a.face
                    ))
                    .face(a.face)
                    .vertices([v])
                    .edges(a.x.iter().copied()),
                );
            }
        }
    }
    Ok(TheoremReport::new(
        TheoremId::VertexDeletionClaims,
        witnesses,
        counts,
    ))
}
