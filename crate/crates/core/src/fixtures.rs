//! Hand-built combinatorial drawings of K_3 and the two simple drawings of
//! K_4.

use std::collections::BTreeMap;

use crate::drawing::{Crossing, CrossingSign, Edge, GoodDrawing};

/// The triangle.
pub fn k3() -> GoodDrawing {
    GoodDrawing::from_parts(
        3,
        vec![vec![2, 3], vec![1, 3], vec![1, 2]],
        vec![],
        BTreeMap::new(),
    )
    .expect("fixture ids in range")
}

/// Triangle 1-2-3 with vertex 4 inside it; no crossings.
pub fn planar_k4() -> GoodDrawing {
    GoodDrawing::from_parts(
        4,
        vec![vec![2, 4, 3], vec![1, 3, 4], vec![1, 4, 2], vec![1, 2, 3]],
        vec![],
        BTreeMap::new(),
    )
    .expect("fixture ids in range")
}

/// Convex quadrilateral 1-2-3-4 whose diagonals 1-3 and 2-4 cross once.
pub fn one_crossing_k4() -> GoodDrawing {
    let d13 = Edge::new(1, 3);
    let d24 = Edge::new(2, 4);
    let mut order = BTreeMap::new();
    order.insert(d13, vec![0]);
    order.insert(d24, vec![0]);
    GoodDrawing::from_parts(
        4,
        vec![vec![2, 3, 4], vec![1, 3, 4], vec![1, 2, 4], vec![1, 2, 3]],
        vec![Crossing::new(d13, d24, CrossingSign::Positive)],
        order,
    )
    .expect("fixture ids in range")
}
