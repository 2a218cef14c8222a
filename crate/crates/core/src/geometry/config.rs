use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{
    orientation, parse_rational, rational_to_string, Orientation, RationalPoint, SegmentCrossing,
};
use crate::geometry::{int, segment_crossing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("vertices {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("vertices {0}, {1}, {2} are collinear")]
    Collinear(usize, usize, usize),
    #[error("segments {segments:?} are concurrent at {point}")]
    Concurrent {
        segments: Vec<(usize, usize)>,
        point: String,
    },
    #[error("segments {0:?} and {1:?} meet degenerately")]
    Degenerate((usize, usize), (usize, usize)),
    #[error("point configuration json: {0}")]
    Json(String),
}

/// A straight-line vertex placement for K_n in general position.
///
/// Vertex `v` (1-based) sits at `points[v - 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    points: Vec<RationalPoint>,
    seed: Option<u64>,
}

impl PointConfiguration {
    /// Validates general position and wraps the points.
    pub fn new(points: Vec<RationalPoint>, seed: Option<u64>) -> Result<Self, GeometryError> {
        check_general_position(&points)?;
        Ok(Self { points, seed })
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn points(&self) -> &[RationalPoint] {
        &self.points
    }

    /// Position of vertex `v` (1-based).
    pub fn point(&self, v: usize) -> &RationalPoint {
        &self.points[v - 1]
    }

    pub fn convex_quadruple_count(&self) -> u64 {
        convex_quadruple_count(&self.points).expect("configuration is in general position")
    }

    pub fn to_json(&self) -> String {
        let file = PointFile {
            n: self.n(),
            seed: self.seed,
            points: self
                .points
                .iter()
                .map(|p| [rational_to_string(&p.x), rational_to_string(&p.y)])
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&file).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, GeometryError> {
        let file: PointFile =
            serde_json::from_str(text).map_err(|e| GeometryError::Json(e.to_string()))?;
        if file.points.len() != file.n {
            return Err(GeometryError::Json(format!(
                "n = {} but {} points given",
                file.n,
                file.points.len()
            )));
        }
        let points = file
            .points
            .iter()
            .enumerate()
            .map(|(i, [x, y])| match (parse_rational(x), parse_rational(y)) {
                (Some(x), Some(y)) => Ok(RationalPoint::new(x, y)),
                _ => Err(GeometryError::Json(format!("points[{i}]: bad rational"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(points, file.seed)
    }
}

#[derive(Serialize, Deserialize)]
struct PointFile {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    points: Vec<[String; 2]>,
}

fn check_general_position(points: &[RationalPoint]) -> Result<(), GeometryError> {
    let n = points.len();
    if n < 3 {
        return Err(GeometryError::TooFewPoints(n));
    }
    for i in 0..n {
        for j in i + 1..n {
            if points[i] == points[j] {
                return Err(GeometryError::DuplicatePoint(i + 1, j + 1));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if orientation(&points[i], &points[j], &points[k]) == Orientation::Collinear {
                    return Err(GeometryError::Collinear(i + 1, j + 1, k + 1));
                }
            }
        }
    }
    // With no collinear triple, no segment passes through a third vertex;
    // what remains is concurrency of three or more segments.
    let segments: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut seen: HashMap<RationalPoint, Vec<(usize, usize)>> = HashMap::new();
    for (si, &(a, b)) in segments.iter().enumerate() {
        for &(c, d) in &segments[si + 1..] {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            match segment_crossing(&points[a], &points[b], &points[c], &points[d]) {
                SegmentCrossing::InteriorCrossing(p) => {
                    let entry = seen.entry(p).or_default();
                    for s in [(a + 1, b + 1), (c + 1, d + 1)] {
                        if !entry.contains(&s) {
                            entry.push(s);
                        }
                    }
                }
                SegmentCrossing::Degenerate => {
                    return Err(GeometryError::Degenerate((a + 1, b + 1), (c + 1, d + 1)))
                }
                _ => {}
            }
        }
    }
    let mut worst: Option<(&RationalPoint, &Vec<(usize, usize)>)> = None;
    for (p, segs) in &seen {
        if segs.len() > 2 && worst.is_none_or(|(q, _)| p < q) {
            worst = Some((p, segs));
        }
    }
    if let Some((p, segs)) = worst {
        let mut segments = segs.clone();
        segments.sort();
        return Err(GeometryError::Concurrent {
            segments,
            point: p.to_string(),
        });
    }
    Ok(())
}

/// Number of 4-subsets in convex position, by orientation tests alone.
///
/// A 4-set in general position is convex iff none of its points lies
/// inside the triangle of the other three.
pub fn convex_quadruple_count(points: &[RationalPoint]) -> Result<u64, GeometryError> {
    let n = points.len();
    let orient = |i: usize, j: usize, k: usize| -> Result<Orientation, GeometryError> {
        match orientation(&points[i], &points[j], &points[k]) {
            Orientation::Collinear => {
                let mut t = [i + 1, j + 1, k + 1];
                t.sort();
                Err(GeometryError::Collinear(t[0], t[1], t[2]))
            }
            o => Ok(o),
        }
    };
    let mut count = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let quad = [a, b, c, d];
                    let mut convex = true;
                    for skip in 0..4 {
                        let rest: Vec<usize> =
                            (0..4).filter(|&i| i != skip).map(|i| quad[i]).collect();
                        let p = quad[skip];
                        let o1 = orient(rest[0], rest[1], p)?;
                        let o2 = orient(rest[1], rest[2], p)?;
                        let o3 = orient(rest[2], rest[0], p)?;
                        if o1 == o2 && o2 == o3 {
                            convex = false;
                        }
                    }
                    if convex {
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(count)
}

const CONVEX_ABSCISSA_RANGE: i64 = 1 << 16;
const GENERAL_COORD_RANGE: i64 = 1 << 20;

/// Redraws candidates until one is in general position.
fn generate_retrying(
    seed: u64,
    mut draw: impl FnMut(&mut ChaCha8Rng) -> Vec<RationalPoint>,
) -> (PointConfiguration, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0;
    loop {
        attempts += 1;
        if let Ok(cfg) = PointConfiguration::new(draw(&mut rng), Some(seed)) {
            return (cfg, attempts);
        }
    }
}

/// `n` points on the parabola `y = x^2` at distinct random integer
/// abscissas, numbered in hull order.
pub fn generate_convex(n: usize, seed: u64) -> PointConfiguration {
    assert!(n >= 3, "generate_convex needs n >= 3");
    generate_retrying(seed, |rng| {
        let mut ts = BTreeSet::new();
        while ts.len() < n {
            ts.insert(rng.gen_range(0..CONVEX_ABSCISSA_RANGE));
        }
        ts.into_iter()
            .map(|t| RationalPoint::new(int(t), int(t * t)))
            .collect()
    })
    .0
}

/// `n` random integer points in `[0, 2^20)^2` in general position.
pub fn generate_general(n: usize, seed: u64) -> PointConfiguration {
    assert!(n >= 3, "generate_general needs n >= 3");
    generate_retrying(seed, |rng| {
        (0..n)
            .map(|_| {
                RationalPoint::from_ints(
                    rng.gen_range(0..GENERAL_COORD_RANGE),
                    rng.gen_range(0..GENERAL_COORD_RANGE),
                )
            })
            .collect()
    })
    .0
}
