//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use std::collections::BTreeMap;

use simple_drawings::geometry::{generate_convex, generate_general, PointConfiguration};
use simple_drawings::planarizer::{dual_graph, PlaneMap};
use simple_drawings::{build_plane_map, GoodDrawing};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Faces predicted by Euler's formula for a connected plane map of K_n with
/// `cr` crossings.
pub fn euler_faces(n: usize, cr: usize) -> usize {
    2 + binomial(n, 2) + cr - n
}

pub fn natural(n: usize, seed: u64) -> (PointConfiguration, GoodDrawing) {
    let cfg = generate_convex(n, seed);
    let d = GoodDrawing::from_geometric(&cfg).expect("generated points are in general position");
    (cfg, d)
}

pub fn random(n: usize, seed: u64) -> (PointConfiguration, GoodDrawing) {
    let cfg = generate_general(n, seed);
    let d = GoodDrawing::from_geometric(&cfg).expect("generated points are in general position");
    (cfg, d)
}

pub fn map_of(d: &GoodDrawing) -> PlaneMap {
    build_plane_map(d).expect("drawing planarizes")
}

pub fn boundary_lengths(map: &PlaneMap) -> Vec<usize> {
    let mut v: Vec<usize> = map.faces().iter().map(|f| f.len()).collect();
    v.sort_unstable();
    v
}

/// Face adjacency with multiplicities: `adj[a][b]` counts segments with
/// faces `a` and `b` on its two sides.
fn adjacency(map: &PlaneMap) -> Vec<Vec<usize>> {
    let dual = dual_graph(map);
    let mut adj = vec![vec![0usize; dual.face_count]; dual.face_count];
    for e in &dual.edges {
        let (a, b) = e.faces;
        adj[a][b] += 1;
        if a != b {
            adj[b][a] += 1;
        }
    }
    adj
}

/// Brute-force isomorphism test of the dual multigraphs, also requiring
/// that matched faces have equal boundary lengths. Exponential; meant for
/// maps with a dozen faces or fewer.
pub fn duals_isomorphic(a: &PlaneMap, b: &PlaneMap) -> bool {
    if a.face_count() != b.face_count() {
        return false;
    }
    let (aa, ab) = (adjacency(a), adjacency(b));
    let len_a: Vec<usize> = a.faces().iter().map(|f| f.len()).collect();
    let len_b: Vec<usize> = b.faces().iter().map(|f| f.len()).collect();
    let k = a.face_count();
    let mut image = vec![usize::MAX; k];
    let mut used = vec![false; k];
    extend(0, &aa, &ab, &len_a, &len_b, &mut image, &mut used)
}

fn extend(
    i: usize,
    aa: &[Vec<usize>],
    ab: &[Vec<usize>],
    len_a: &[usize],
    len_b: &[usize],
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    if i == aa.len() {
        return true;
    }
    for j in 0..ab.len() {
        if used[j] || len_a[i] != len_b[j] || aa[i][i] != ab[j][j] {
            continue;
        }
        if (0..i).any(|p| aa[i][p] != ab[j][image[p]]) {
            continue;
        }
        image[i] = j;
        used[j] = true;
        if extend(i + 1, aa, ab, len_a, len_b, image, used) {
            return true;
        }
        used[j] = false;
        image[i] = usize::MAX;
    }
    false
}

/// Multiset of incident-edge sets, with vertices renamed through `perm`.
pub fn incident_edge_sets(map: &PlaneMap, perm: Option<&[usize]>) -> Vec<Vec<(usize, usize)>> {
    let rename = |v: usize| perm.map_or(v, |p| p[v - 1]);
    let mut out: Vec<Vec<(usize, usize)>> = map
        .faces()
        .iter()
        .map(|f| {
            let mut s: Vec<(usize, usize)> = f
                .incident_edges
                .iter()
                .map(|e| {
                    let (a, b) = (rename(e.lo()), rename(e.hi()));
                    (a.min(b), a.max(b))
                })
                .collect();
            s.sort_unstable();
            s
        })
        .collect();
    out.sort();
    out
}

pub fn histogram(values: impl IntoIterator<Item = usize>) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for v in values {
        *h.entry(v).or_insert(0) += 1;
    }
    h
}
