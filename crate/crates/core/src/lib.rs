//! Simple drawings of the complete graph K_n.
//!
//! A [`GoodDrawing`] is a purely combinatorial description: rotations at the
//! vertices, the order of crossings along each edge and a handedness per
//! crossing. [`planarizer::build_plane_map`] turns it into a half-edge plane
//! map whose faces the [`checks`] module inspects. Straight-line drawings
//! come from exact rational [`geometry`].

pub mod checks;
pub mod drawing;
pub mod fixtures;
pub mod format;
pub mod geometry;
pub mod planarizer;
pub mod sides;

pub use checks::{TheoremId, TheoremReport};
pub use drawing::{
    validate_good, Crossing, CrossingSign, Edge, GoodDrawing, ValidationReport, VertexId,
};
pub use format::{decode, encode, DecodeError};
pub use geometry::{PointConfiguration, Rational, RationalPoint};
pub use planarizer::{build_plane_map, PlaneMap};
