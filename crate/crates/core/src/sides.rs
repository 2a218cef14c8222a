//! The two sides of the closed curve drawn by a 3-cycle.
//!
//! Sides are found combinatorially: cut the dual graph along the three
//! edges of the triangle and take the two components that remain.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::drawing::{Edge, VertexId};
use crate::planarizer::{FaceId, NodeId, PlaneMap, SegmentId, UnionFind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangle {
    vertices: [VertexId; 3],
}

impl Triangle {
    /// `None` unless the three vertices are distinct.
    pub fn new(a: VertexId, b: VertexId, c: VertexId) -> Option<Self> {
        let mut vertices = [a, b, c];
        vertices.sort_unstable();
        (vertices[0] != vertices[1] && vertices[1] != vertices[2]).then_some(Self { vertices })
    }

    pub fn vertices(&self) -> [VertexId; 3] {
        self.vertices
    }

    pub fn edges(&self) -> [Edge; 3] {
        let [a, b, c] = self.vertices;
        [Edge::new(a, b), Edge::new(b, c), Edge::new(a, c)]
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.vertices;
        write!(f, "{a}-{b}-{c}")
    }
}

/// All C(n, 3) triangles, lexicographically.
pub fn all_triangles(n: usize) -> impl Iterator<Item = Triangle> {
    (1..=n).flat_map(move |a| {
        (a + 1..=n).flat_map(move |b| {
            (b + 1..=n).map(move |c| Triangle {
                vertices: [a, b, c],
            })
        })
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SideError {
    #[error("triangle {0} has a vertex outside 1..={1}")]
    BadTriangle(Triangle, usize),
    #[error("triangle-not-simple: curve of {triangle} passes node {node} twice")]
    TriangleNotSimple { triangle: Triangle, node: NodeId },
    #[error("jordan-violation: cutting along {triangle} leaves {components} components")]
    JordanViolation {
        triangle: Triangle,
        components: usize,
    },
    #[error("unknown face {0}")]
    UnknownFace(FaceId),
}

/// Segments of the three edges of `t`, in the order of the closed walk
/// `a -> b -> c -> a` where `a < b < c`.
pub fn triangle_segments(map: &PlaneMap, t: Triangle) -> Result<Vec<SegmentId>, SideError> {
    let [a, b, c] = t.vertices;
    if c > map.n() || a == 0 {
        return Err(SideError::BadTriangle(t, map.n()));
    }
    let mut segments = Vec::new();
    let mut nodes = Vec::new();
    for (from, to) in [(a, b), (b, c), (c, a)] {
        let trace = map.edge_trace(Edge::new(from, to));
        let (mut seg_walk, mut node_walk) = (trace.segments, trace.nodes);
        if from > to {
            seg_walk.reverse();
            node_walk.reverse();
        }
        segments.extend(seg_walk);
        // drop the final node; it starts the next leg
        node_walk.pop();
        nodes.extend(node_walk);
    }
    let mut seen = BTreeSet::new();
    for &node in &nodes {
        if !seen.insert(node) {
            return Err(SideError::TriangleNotSimple { triangle: t, node });
        }
    }
    Ok(segments)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SidePartition {
    pub triangle: Triangle,
    /// The side holding the lowest face id.
    pub side_a: BTreeSet<FaceId>,
    pub side_b: BTreeSet<FaceId>,
}

impl SidePartition {
    pub fn face_count(&self) -> usize {
        self.side_a.len() + self.side_b.len()
    }
}

/// Splits the faces into the two sides of `t`.
pub fn side_partition(map: &PlaneMap, t: Triangle) -> Result<SidePartition, SideError> {
    let cut: BTreeSet<SegmentId> = triangle_segments(map, t)?.into_iter().collect();
    let mut uf = UnionFind::new(map.face_count());
    for s in 0..map.segment_count() {
        if !cut.contains(&s) {
            let [x, y] = map.segment_faces(s);
            uf.union(x, y);
        }
    }
    let components = uf.components();
    if components != 2 {
        return Err(SideError::JordanViolation {
            triangle: t,
            components,
        });
    }
    // Union-find roots are the smallest member, so face 0 roots side_a.
    let mut side_a = BTreeSet::new();
    let mut side_b = BTreeSet::new();
    for f in 0..map.face_count() {
        if uf.find(f) == uf.find(0) {
            side_a.insert(f);
        } else {
            side_b.insert(f);
        }
    }
    Ok(SidePartition {
        triangle: t,
        side_a,
        side_b,
    })
}

/// The side of the partition containing face `r`.
pub fn side_containing(p: &SidePartition, r: FaceId) -> Result<&BTreeSet<FaceId>, SideError> {
    if p.side_a.contains(&r) {
        Ok(&p.side_a)
    } else if p.side_b.contains(&r) {
        Ok(&p.side_b)
    } else {
        Err(SideError::UnknownFace(r))
    }
}

pub fn all_side_partitions(map: &PlaneMap) -> Result<Vec<SidePartition>, SideError> {
    all_triangles(map.n())
        .map(|t| side_partition(map, t))
        .collect()
}
