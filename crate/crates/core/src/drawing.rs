//! Combinatorial description of a simple drawing of K_n.
//!
//! A drawing is given by the cyclic order of edges at every vertex, the
//! ordered list of crossings along every edge, and one sign per crossing.
//! The sign replaces a full rotation at the crossing: in a simple drawing
//! the four ends at a crossing always alternate between the two edges, so
//! only the handedness is free.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Signed;
use serde::Serialize;
use thiserror::Error;

use crate::geometry::{
    angular_cmp, direction_cross, segment_crossing, PointConfiguration, RationalPoint,
    SegmentCrossing,
};
use crate::planarizer::{assemble, PlanarizeError};

/// Vertices are numbered `1..=n`.
pub type VertexId = usize;

/// Index into [`GoodDrawing::crossings`].
pub type CrossingId = usize;

/// Unordered pair of distinct vertices, stored with `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    lo: VertexId,
    hi: VertexId,
}

impl Edge {
    /// Panics if `a == b`.
    pub fn new(a: VertexId, b: VertexId) -> Self {
        Self::try_new(a, b).expect("edge endpoints must differ")
    }

    pub fn try_new(a: VertexId, b: VertexId) -> Option<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(Self { lo: a, hi: b }),
            std::cmp::Ordering::Greater => Some(Self { lo: b, hi: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn lo(self) -> VertexId {
        self.lo
    }

    pub fn hi(self) -> VertexId {
        self.hi
    }

    pub fn contains(self, v: VertexId) -> bool {
        self.lo == v || self.hi == v
    }

    /// The endpoint that is not `v`.
    pub fn other(self, v: VertexId) -> VertexId {
        debug_assert!(self.contains(v));
        if self.lo == v {
            self.hi
        } else {
            self.lo
        }
    }

    pub fn shares_vertex(self, other: Edge) -> bool {
        self.contains(other.lo) || self.contains(other.hi)
    }

    /// `"a-b"` with `a < b`.
    pub fn key(self) -> String {
        format!("{}-{}", self.lo, self.hi)
    }

    pub fn parse_key(key: &str) -> Option<Self> {
        let (a, b) = key.split_once('-')?;
        Self::try_new(a.trim().parse().ok()?, b.trim().parse().ok()?)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

impl Serialize for Edge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.lo, self.hi].serialize(s)
    }
}

/// Handedness of a crossing between edges `e < f`.
///
/// Write `e+` for the end of `e` heading to its larger endpoint and `e-`
/// for the other; likewise for `f`. `Positive` means the counter-clockwise
/// order of ends at the crossing is `e+, f+, e-, f-`; `Negative` means
/// `e+, f-, e-, f+`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CrossingSign {
    Positive,
    Negative,
}

impl CrossingSign {
    pub fn from_i64(v: i64) -> Option<Self> {
        match v {
            1 => Some(Self::Positive),
            -1 => Some(Self::Negative),
            _ => None,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Self::Positive => 1,
            Self::Negative => -1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Self::Positive => Self::Negative,
            Self::Negative => Self::Positive,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    edges: [Edge; 2],
    sign: CrossingSign,
}

impl Crossing {
    /// The pair is stored sorted; `sign` must be relative to that order.
    pub fn new(e: Edge, f: Edge, sign: CrossingSign) -> Self {
        if e <= f {
            Self {
                edges: [e, f],
                sign,
            }
        } else {
            Self {
                edges: [f, e],
                sign,
            }
        }
    }

    pub fn edges(&self) -> [Edge; 2] {
        self.edges
    }

    pub fn sign(&self) -> CrossingSign {
        self.sign
    }

    pub fn involves(&self, e: Edge) -> bool {
        self.edges[0] == e || self.edges[1] == e
    }

    /// The edge crossing `e` here.
    pub fn partner(&self, e: Edge) -> Edge {
        if self.edges[0] == e {
            self.edges[1]
        } else {
            self.edges[0]
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructuralError {
    #[error("n must be at least 3, got {0}")]
    TooFewVertices(usize),
    #[error("expected {expected} rotations, got {got}")]
    RotationCount { expected: usize, got: usize },
    #[error("vertex {vertex} out of range 1..={n} in {context}")]
    VertexOutOfRange {
        vertex: VertexId,
        n: usize,
        context: String,
    },
    #[error("edge with equal endpoints {0}-{0} in {1}")]
    LoopEdge(VertexId, String),
    #[error("crossing index {index} out of range in order of edge {edge}")]
    CrossingOutOfRange { index: usize, edge: Edge },
}

#[derive(Debug, Error)]
pub enum DrawingError {
    #[error("degenerate geometry between segments {0} and {1}")]
    Degenerate(Edge, Edge),
    #[error("vertices {0}, {1}, {2} are collinear")]
    Collinear(VertexId, VertexId, VertexId),
}

/// Combinatorial drawing of K_n. See the module docs for the encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodDrawing {
    n: usize,
    /// `rotation[v - 1]`: counter-clockwise neighbours of `v`, starting at
    /// the smallest id.
    rotation: Vec<Vec<VertexId>>,
    crossings: Vec<Crossing>,
    /// Crossings along each edge, from its smaller endpoint. Every edge of
    /// K_n has an entry.
    order: BTreeMap<Edge, Vec<CrossingId>>,
}

fn normalize_cycle(cycle: &mut [VertexId]) {
    if let Some(pos) = cycle
        .iter()
        .enumerate()
        .min_by_key(|(_, v)| **v)
        .map(|(i, _)| i)
    {
        cycle.rotate_left(pos);
    }
}

impl GoodDrawing {
    /// Assembles a drawing from raw parts, rejecting out-of-range ids.
    ///
    /// Rotations are normalized to start at their smallest neighbour and
    /// edges missing from `order` get an empty crossing list. Nothing
    /// beyond id ranges is checked here; see [`validate_good`].
    pub fn from_parts(
        n: usize,
        mut rotation: Vec<Vec<VertexId>>,
        crossings: Vec<Crossing>,
        mut order: BTreeMap<Edge, Vec<CrossingId>>,
    ) -> Result<Self, StructuralError> {
        if n < 3 {
            return Err(StructuralError::TooFewVertices(n));
        }
        if rotation.len() != n {
            return Err(StructuralError::RotationCount {
                expected: n,
                got: rotation.len(),
            });
        }
        let in_range = |v: VertexId, context: &dyn Fn() -> String| {
            if (1..=n).contains(&v) {
                Ok(())
            } else {
                Err(StructuralError::VertexOutOfRange {
                    vertex: v,
                    n,
                    context: context(),
                })
            }
        };
        for (i, rot) in rotation.iter().enumerate() {
            for &w in rot {
                in_range(w, &|| format!("rotation of {}", i + 1))?;
            }
        }
        for (i, c) in crossings.iter().enumerate() {
            for e in c.edges {
                in_range(e.hi, &|| format!("crossing {i}"))?;
                in_range(e.lo, &|| format!("crossing {i}"))?;
            }
        }
        for (&e, list) in &order {
            in_range(e.hi, &|| format!("order of {e}"))?;
            in_range(e.lo, &|| format!("order of {e}"))?;
            if let Some(&bad) = list.iter().find(|&&c| c >= crossings.len()) {
                return Err(StructuralError::CrossingOutOfRange {
                    index: bad,
                    edge: e,
                });
            }
        }
        for rot in &mut rotation {
            normalize_cycle(rot);
        }
        for e in all_edges(n) {
            order.entry(e).or_default();
        }
        Ok(Self {
            n,
            rotation,
            crossings,
            order,
        })
    }

    /// The straight-line drawing of K_n on a point configuration.
    pub fn from_geometric(cfg: &PointConfiguration) -> Result<Self, DrawingError> {
        let n = cfg.n();
        let pt = |v: VertexId| cfg.point(v);

        let mut rotation = Vec::with_capacity(n);
        for v in 1..=n {
            let mut nbrs: Vec<VertexId> = (1..=n).filter(|&w| w != v).collect();
            let mut err = None;
            nbrs.sort_by(|&a, &b| {
                let o = angular_cmp(pt(v), pt(a), pt(b));
                if o == std::cmp::Ordering::Equal && a != b {
                    err = Some(DrawingError::Collinear(v, a.min(b), a.max(b)));
                }
                o
            });
            if let Some(e) = err {
                return Err(e);
            }
            rotation.push(nbrs);
        }

        let edges: Vec<Edge> = all_edges(n).collect();
        let mut crossings = Vec::new();
        let mut hits: BTreeMap<Edge, Vec<(CrossingId, RationalPoint)>> = BTreeMap::new();
        for (i, &e) in edges.iter().enumerate() {
            for &f in &edges[i + 1..] {
                let res = segment_crossing(pt(e.lo), pt(e.hi), pt(f.lo), pt(f.hi));
                match res {
                    SegmentCrossing::InteriorCrossing(p) => {
                        let positive =
                            direction_cross(pt(e.lo), pt(e.hi), pt(f.lo), pt(f.hi)).is_positive();
                        let sign = if positive {
                            CrossingSign::Positive
                        } else {
                            CrossingSign::Negative
                        };
                        let id = crossings.len();
                        crossings.push(Crossing::new(e, f, sign));
                        hits.entry(e).or_default().push((id, p.clone()));
                        hits.entry(f).or_default().push((id, p));
                    }
                    SegmentCrossing::Degenerate => return Err(DrawingError::Degenerate(e, f)),
                    SegmentCrossing::SharedEndpoint if !e.shares_vertex(f) => {
                        return Err(DrawingError::Degenerate(e, f))
                    }
                    SegmentCrossing::None if e.shares_vertex(f) => {
                        return Err(DrawingError::Degenerate(e, f))
                    }
                    _ => {}
                }
            }
        }

        let mut order = BTreeMap::new();
        for (e, mut list) in hits {
            let a = pt(e.lo);
            let b = pt(e.hi);
            let dx = &b.x - &a.x;
            let dy = &b.y - &a.y;
            // Sort by projection onto the edge direction.
            list.sort_by_cached_key(|(_, p)| (&p.x - &a.x) * &dx + (&p.y - &a.y) * &dy);
            order.insert(e, list.into_iter().map(|(id, _)| id).collect());
        }

        Ok(Self::from_parts(n, rotation, crossings, order).expect("ids in range by construction"))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Counter-clockwise neighbours of `v`.
    pub fn rotation(&self, v: VertexId) -> &[VertexId] {
        &self.rotation[v - 1]
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Crossings along `e`, from its smaller endpoint.
    pub fn crossings_along(&self, e: Edge) -> &[CrossingId] {
        self.order.get(&e).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Crossings along `e`, listed from endpoint `from`.
    pub fn crossings_from(&self, e: Edge, from: VertexId) -> Vec<CrossingId> {
        let mut list = self.crossings_along(e).to_vec();
        if from == e.hi {
            list.reverse();
        }
        list
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> {
        all_edges(self.n)
    }

    pub(crate) fn order_map(&self) -> &BTreeMap<Edge, Vec<CrossingId>> {
        &self.order
    }

    /// Renames vertex `v` to `perm[v - 1]`; `perm` must be a permutation of
    /// `1..=n`. Crossing lists and signs are rewritten for the new
    /// orientation conventions, so the drawing itself is unchanged.
    pub fn relabel(&self, perm: &[VertexId]) -> Self {
        assert_eq!(perm.len(), self.n);
        let map = |v: VertexId| perm[v - 1];
        let map_edge = |e: Edge| Edge::new(map(e.lo), map(e.hi));
        let flipped = |e: Edge| map(e.lo) > map(e.hi);

        let mut rotation = vec![Vec::new(); self.n];
        for v in 1..=self.n {
            rotation[map(v) - 1] = self.rotation(v).iter().map(|&w| map(w)).collect();
        }
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let [e, f] = c.edges;
                let (ne, nf) = (map_edge(e), map_edge(f));
                let mut sign = c.sign;
                if flipped(e) {
                    sign = sign.flipped();
                }
                if flipped(f) {
                    sign = sign.flipped();
                }
                if ne > nf {
                    sign = sign.flipped();
                }
                Crossing::new(ne, nf, sign)
            })
            .collect();
        let order = self
            .order
            .iter()
            .map(|(&e, list)| {
                let mut list = list.clone();
                if flipped(e) {
                    list.reverse();
                }
                (map_edge(e), list)
            })
            .collect();
        Self::from_parts(self.n, rotation, crossings, order).expect("relabeling keeps ids in range")
    }

    /// The mirror-image drawing: every rotation reversed, every crossing
    /// sign flipped.
    pub fn mirror(&self) -> Self {
        let rotation = self
            .rotation
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing::new(c.edges[0], c.edges[1], c.sign.flipped()))
            .collect();
        Self::from_parts(self.n, rotation, crossings, self.order.clone())
            .expect("mirroring keeps ids in range")
    }

    /// Copy with the sign of crossing `c` flipped. Used for mutation tests.
    pub fn with_flipped_sign(&self, c: CrossingId) -> Self {
        let mut out = self.clone();
        out.crossings[c].sign = out.crossings[c].sign.flipped();
        out
    }

    /// Copy with crossing `c` removed from one edge's list only.
    pub fn with_entry_removed(&self, e: Edge, c: CrossingId) -> Self {
        let mut out = self.clone();
        if let Some(list) = out.order.get_mut(&e) {
            list.retain(|&x| x != c);
        }
        out
    }

    /// Copy with crossing `c` deleted entirely and the remaining crossings
    /// renumbered.
    pub fn with_crossing_deleted(&self, c: CrossingId) -> Self {
        let mut out = self.clone();
        out.crossings.remove(c);
        for list in out.order.values_mut() {
            list.retain(|&x| x != c);
            for x in list.iter_mut() {
                if *x > c {
                    *x -= 1;
                }
            }
        }
        out
    }
}

/// All edges of K_n in lexicographic order.
pub fn all_edges(n: usize) -> impl Iterator<Item = Edge> {
    (1..=n).flat_map(move |a| (a + 1..=n).map(move |b| Edge::new(a, b)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: &'static str,
    pub witness: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub vertices: Vec<VertexId>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<Edge>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub crossings: Vec<CrossingId>,
}

impl Violation {
    fn new(rule: &'static str, witness: String) -> Self {
        Self {
            rule,
            witness,
            vertices: Vec::new(),
            edges: Vec::new(),
            crossings: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        Self {
            ok: violations.is_empty(),
            violations,
        }
    }

    pub fn has_rule(&self, rule: &str) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}

/// Checks that do not need the plane map.
pub(crate) fn local_violations(d: &GoodDrawing) -> Vec<Violation> {
    let mut out = Vec::new();

    for v in 1..=d.n {
        let rot = d.rotation(v);
        let got: BTreeSet<VertexId> = rot.iter().copied().collect();
        let want: BTreeSet<VertexId> = (1..=d.n).filter(|&w| w != v).collect();
        if got != want || rot.len() != d.n - 1 {
            let mut viol = Violation::new(
                "rotation-not-permutation",
                format!("rotation at {v} is {rot:?}, expected each other vertex once"),
            );
            viol.vertices.push(v);
            out.push(viol);
        }
    }

    let mut pairs: BTreeMap<[Edge; 2], CrossingId> = BTreeMap::new();
    for (id, c) in d.crossings.iter().enumerate() {
        let [e, f] = c.edges;
        if e.shares_vertex(f) {
            let mut viol = Violation::new(
                "adjacent-edges-cross",
                format!("crossing {id} pairs edges {e} and {f}, which share a vertex"),
            );
            viol.edges = vec![e, f];
            viol.crossings.push(id);
            out.push(viol);
        }
        if let Some(&first) = pairs.get(&c.edges) {
            let mut viol = Violation::new(
                "duplicate-crossing",
                format!("crossings {first} and {id} both pair {e} with {f}"),
            );
            viol.edges = vec![e, f];
            viol.crossings = vec![first, id];
            out.push(viol);
        } else {
            pairs.insert(c.edges, id);
        }
    }

    for (&e, list) in &d.order {
        let mut seen = BTreeSet::new();
        for &c in list {
            if !seen.insert(c) {
                let mut viol = Violation::new(
                    "crossing-repeated-in-list",
                    format!("crossing {c} appears more than once along {e}"),
                );
                viol.edges.push(e);
                viol.crossings.push(c);
                out.push(viol);
            }
            if !d.crossings[c].involves(e) {
                let [a, b] = d.crossings[c].edges;
                let mut viol = Violation::new(
                    "crossing-list-asymmetry",
                    format!("crossing {c} of {a} and {b} is listed along unrelated edge {e}"),
                );
                viol.edges.push(e);
                viol.crossings.push(c);
                out.push(viol);
            }
        }
    }
    for (id, c) in d.crossings.iter().enumerate() {
        for e in c.edges {
            if !d.crossings_along(e).contains(&id) {
                let mut viol = Violation::new(
                    "crossing-list-asymmetry",
                    format!(
                        "crossing {id} of {} and {} is missing from the list of {e}",
                        c.edges[0], c.edges[1]
                    ),
                );
                viol.edges.push(e);
                viol.crossings.push(id);
                out.push(viol);
            }
        }
    }
    out
}

/// Checks every invariant of a simple drawing, including that the
/// assembled plane map is spherical with simple face boundaries.
pub fn validate_good(d: &GoodDrawing) -> ValidationReport {
    let mut violations = local_violations(d);
    if violations.is_empty() {
        if let Err(err) = assemble(d) {
            let rule = match err {
                PlanarizeError::NonSpherical { .. } => "non-spherical",
                PlanarizeError::BoundaryNotSimple { .. } => "boundary-not-simple",
                PlanarizeError::Invalid(_) => "invalid",
            };
            violations.push(Violation::new(rule, err.to_string()));
        }
    }
    ValidationReport::from_violations(violations)
}
