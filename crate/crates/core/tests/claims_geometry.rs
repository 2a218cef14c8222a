//! Cross-checks the combinatorial vertex-deletion analysis against plain
//! geometry: every piece of an edge at `v` is located by a point-in-polygon
//! test on the faces of the straight-line drawing of `D - v`.

mod common;

use std::collections::BTreeMap;

use simple_drawings::checks::{analyze_vertex_deletion, BoundaryPosition, VertexDeletionAnalysis};
use simple_drawings::geometry::{orientation, segment_crossing, Orientation, SegmentCrossing};
use simple_drawings::planarizer::{restrict_delete_vertex, NodeLabel, PlaneMap};
use simple_drawings::{Edge, GoodDrawing, PointConfiguration, Rational, RationalPoint};

struct Faces {
    polygons: Vec<Vec<RationalPoint>>,
    bounded: Vec<bool>,
}

fn signed_area2(poly: &[RationalPoint]) -> Rational {
    let mut acc = Rational::default();
    for i in 0..poly.len() {
        let (a, b) = (&poly[i], &poly[(i + 1) % poly.len()]);
        acc += &a.x * &b.y - &b.x * &a.y;
    }
    acc
}

/// Even-odd ray cast to the right; `p` must not lie on the polygon.
fn inside(poly: &[RationalPoint], p: &RationalPoint) -> bool {
    let mut odd = false;
    for i in 0..poly.len() {
        let (a, b) = (&poly[i], &poly[(i + 1) % poly.len()]);
        if (a.y > p.y) != (b.y > p.y) {
            let x = &a.x + (&p.y - &a.y) * (&b.x - &a.x) / (&b.y - &a.y);
            if x > p.x {
                odd = !odd;
            }
        }
    }
    odd
}

fn original(v: usize, u: usize) -> usize {
    if u >= v {
        u + 1
    } else {
        u
    }
}

fn node_point(cfg: &PointConfiguration, map: &PlaneMap, v: usize, node: usize) -> RationalPoint {
    match map.node_label(node) {
        NodeLabel::Vertex(u) => cfg.point(original(v, u)).clone(),
        NodeLabel::Crossing(c) => {
            let [e, f] = map.crossing_edges(c);
            let ends = |e: Edge| {
                (
                    cfg.point(original(v, e.lo())),
                    cfg.point(original(v, e.hi())),
                )
            };
            let ((a, b), (p, q)) = (ends(e), ends(f));
            match segment_crossing(a, b, p, q) {
                SegmentCrossing::InteriorCrossing(x) => x,
                other => panic!("crossing {c} is {other:?} geometrically"),
            }
        }
    }
}

fn faces(cfg: &PointConfiguration, map: &PlaneMap, v: usize) -> Faces {
    let polygons: Vec<Vec<RationalPoint>> = map
        .faces()
        .iter()
        .map(|f| {
            f.boundary
                .iter()
                .map(|&d| node_point(cfg, map, v, map.dart(d).node))
                .collect()
        })
        .collect();
    let bounded = polygons
        .iter()
        .map(|p| signed_area2(p) > Rational::default())
        .collect();
    Faces { polygons, bounded }
}

fn locate(faces: &Faces, p: &RationalPoint) -> usize {
    let hits: Vec<usize> = (0..faces.polygons.len())
        .filter(|&f| faces.bounded[f] && inside(&faces.polygons[f], p))
        .collect();
    match hits.as_slice() {
        [f] => *f,
        [] => {
            let outer: Vec<usize> = (0..faces.bounded.len())
                .filter(|&f| !faces.bounded[f])
                .collect();
            assert_eq!(outer.len(), 1, "exactly one unbounded face");
            outer[0]
        }
        _ => panic!("point {p} inside several bounded faces {hits:?}"),
    }
}

/// Squared-length-free parameter of `x` along `a -> b`, for ordering only.
fn param(a: &RationalPoint, b: &RationalPoint, x: &RationalPoint) -> Rational {
    (&x.x - &a.x) * (&b.x - &a.x) + (&x.y - &a.y) * (&b.y - &a.y)
}

/// Split points of the edge `v -> w` against the edges of `D - v`, in order
/// from `v`.
fn split_points(cfg: &PointConfiguration, v: usize, w: usize) -> Vec<RationalPoint> {
    let (a, b) = (cfg.point(v), cfg.point(w));
    let mut pts: Vec<RationalPoint> = vec![a.clone(), b.clone()];
    for f in simple_drawings::drawing::all_edges(cfg.n()) {
        if f.contains(v) || f.contains(w) {
            continue;
        }
        if let SegmentCrossing::InteriorCrossing(x) =
            segment_crossing(a, b, cfg.point(f.lo()), cfg.point(f.hi()))
        {
            pts.push(x);
        }
    }
    pts.sort_by_key(|x| param(a, b, x));
    pts
}

fn midpoint(p: &RationalPoint, q: &RationalPoint) -> RationalPoint {
    let half = Rational::new(1.into(), 2.into());
    RationalPoint::new((&p.x + &q.x) * &half, (&p.y + &q.y) * &half)
}

/// Position of a boundary point as (walk index, parameter along that step).
fn boundary_key(poly: &[RationalPoint], x: &RationalPoint) -> (usize, Rational) {
    for i in 0..poly.len() {
        let (a, b) = (&poly[i], &poly[(i + 1) % poly.len()]);
        if x == a {
            return (i, Rational::default());
        }
        let between = param(a, b, x) > Rational::default() && param(b, a, x) > Rational::default();
        if orientation(a, b, x) == Orientation::Collinear && between {
            return (i, param(a, b, x));
        }
    }
    panic!("point {x} is not on the face boundary");
}

/// Labels sorted by key, rotated to start at label 0.
fn cyclic_labels<K: Ord>(mut keyed: Vec<(K, u8)>) -> Vec<u8> {
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let labels: Vec<u8> = keyed.into_iter().map(|k| k.1).collect();
    let start = labels.iter().position(|&l| l == 0).unwrap();
    labels[start..]
        .iter()
        .chain(&labels[..start])
        .copied()
        .collect()
}

/// Returns the number of entry-point pairs compared.
fn check_vertex(cfg: &PointConfiguration, d: &GoodDrawing, v: usize) -> usize {
    let n = cfg.n();
    let map = common::map_of(&restrict_delete_vertex(d, v));
    let faces = faces(cfg, &map, v);
    let analysis: Vec<VertexDeletionAnalysis> = analyze_vertex_deletion(d, v).unwrap();
    assert_eq!(analysis.len(), map.face_count());

    let mut components: Vec<BTreeMap<Edge, usize>> = vec![BTreeMap::new(); map.face_count()];
    let mut v_face = None;
    let mut pairs = 0;
    // Geometric end points of the single piece of an edge inside a face.
    let mut ends: BTreeMap<(usize, Edge), (RationalPoint, RationalPoint)> = BTreeMap::new();
    for w in (1..=n).filter(|&w| w != v) {
        let e = Edge::new(v, w);
        let pts = split_points(cfg, v, w);
        let located: Vec<usize> = pts
            .windows(2)
            .map(|s| locate(&faces, &midpoint(&s[0], &s[1])))
            .collect();
        assert_eq!(
            *v_face.get_or_insert(located[0]),
            located[0],
            "edges disagree on the face of {v}"
        );
        for (face, per_edge) in components.iter_mut().enumerate() {
            let mut runs = 0;
            for (i, &f) in located.iter().enumerate() {
                if f == face && (i == 0 || located[i - 1] != face) {
                    runs += 1;
                    ends.insert((face, e), (pts[i].clone(), pts[i + 1].clone()));
                }
            }
            per_edge.insert(e, runs);
        }
    }

    for a in &analysis {
        assert_eq!(
            a.contains_v,
            Some(a.face) == v_face,
            "v={v} face {}",
            a.face
        );
        assert_eq!(a.components, components[a.face], "v={v} face {}", a.face);
        let x: Vec<Edge> = components[a.face]
            .iter()
            .filter(|(_, &k)| k > 0)
            .map(|(&e, _)| e)
            .collect();
        assert_eq!(a.x, x);
        if a.contains_v {
            assert!(a.entries.is_empty());
            continue;
        }
        let poly = &faces.polygons[a.face];
        for (i, e) in a.entries.iter().enumerate() {
            for f in &a.entries[i + 1..] {
                let combinatorial: Vec<(BoundaryPosition, u8)> =
                    vec![(e.first, 0), (e.second, 1), (f.first, 2), (f.second, 3)];
                let (e1, e2) = &ends[&(a.face, e.edge)];
                let (f1, f2) = &ends[&(a.face, f.edge)];
                let geometric = vec![
                    (boundary_key(poly, e1), 0),
                    (boundary_key(poly, e2), 1),
                    (boundary_key(poly, f1), 2),
                    (boundary_key(poly, f2), 3),
                ];
                assert_eq!(
                    cyclic_labels(combinatorial),
                    cyclic_labels(geometric),
                    "v={v} face {} edges {} {}",
                    a.face,
                    e.edge,
                    f.edge
                );
                pairs += 1;
            }
        }
    }
    pairs
}

#[test]
fn analysis_matches_geometry_on_random_drawings() {
    let mut pairs = 0;
    for n in 4..=7 {
        for seed in 0..12 {
            let (cfg, d) = common::random(n, seed);
            for v in 1..=n {
                pairs += check_vertex(&cfg, &d, v);
            }
        }
    }
    assert!(pairs > 0, "no entry-point pairs were compared");
}

#[test]
fn analysis_matches_geometry_on_convex_drawings() {
    let mut pairs = 0;
    for n in 4..=7 {
        for seed in 0..4 {
            let (cfg, d) = common::natural(n, seed);
            for v in 1..=n {
                pairs += check_vertex(&cfg, &d, v);
            }
        }
    }
    assert!(pairs > 0, "no entry-point pairs were compared");
}
