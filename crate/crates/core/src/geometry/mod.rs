//! Exact rational predicates for straight-line drawings.
//!
//! Everything here works on arbitrary-precision rationals; there is no
//! floating point anywhere in a predicate.

mod config;

pub use config::{
    convex_quadruple_count, generate_convex, generate_general, GeometryError, PointConfiguration,
};

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Builds a rational from an integer.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Formats a rational as an explicit `numerator/denominator` string.
pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Lossy conversion, for rendering only.
pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (
            BigInt::from_str(n.trim()).ok()?,
            BigInt::from_str(d.trim()).ok()?,
        ),
        None => (BigInt::from_str(s).ok()?, BigInt::from(1)),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    pub x: Rational,
    pub y: Rational,
}

impl RationalPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(int(x), int(y))
    }

    /// Lossy conversion, for rendering only.
    pub fn to_f64(&self) -> (f64, f64) {
        (rational_to_f64(&self.x), rational_to_f64(&self.y))
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
            Orientation::CounterClockwise => Orientation::Clockwise,
        }
    }

    fn from_sign(v: &Rational) -> Self {
        match v.cmp(&Rational::zero()) {
            Ordering::Less => Orientation::Clockwise,
            Ordering::Equal => Orientation::Collinear,
            Ordering::Greater => Orientation::CounterClockwise,
        }
    }
}

/// `(q - p) x (r - p)`.
pub(crate) fn cross(p: &RationalPoint, q: &RationalPoint, r: &RationalPoint) -> Rational {
    let dx1 = &q.x - &p.x;
    let dy1 = &q.y - &p.y;
    let dx2 = &r.x - &p.x;
    let dy2 = &r.y - &p.y;
    dx1 * dy2 - dy1 * dx2
}

/// Cross product of the direction vectors `b - a` and `d - c`.
pub(crate) fn direction_cross(
    a: &RationalPoint,
    b: &RationalPoint,
    c: &RationalPoint,
    d: &RationalPoint,
) -> Rational {
    (&b.x - &a.x) * (&d.y - &c.y) - (&b.y - &a.y) * (&d.x - &c.x)
}

/// Sign of the exact determinant of the triangle `(p, q, r)`.
pub fn orientation(p: &RationalPoint, q: &RationalPoint, r: &RationalPoint) -> Orientation {
    Orientation::from_sign(&cross(p, q, r))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentCrossing {
    None,
    InteriorCrossing(RationalPoint),
    SharedEndpoint,
    Degenerate,
}

/// `p` lies on the closed segment `a-b`, given that the three are collinear.
fn within_box(a: &RationalPoint, b: &RationalPoint, p: &RationalPoint) -> bool {
    let (xl, xh) = if a.x <= b.x {
        (&a.x, &b.x)
    } else {
        (&b.x, &a.x)
    };
    let (yl, yh) = if a.y <= b.y {
        (&a.y, &b.y)
    } else {
        (&b.y, &a.y)
    };
    xl <= &p.x && &p.x <= xh && yl <= &p.y && &p.y <= yh
}

/// Classifies how the closed segments `a1-a2` and `b1-b2` meet.
///
/// Both segments must be non-degenerate (`a1 != a2`, `b1 != b2`).
pub fn segment_crossing(
    a1: &RationalPoint,
    a2: &RationalPoint,
    b1: &RationalPoint,
    b2: &RationalPoint,
) -> SegmentCrossing {
    debug_assert!(a1 != a2 && b1 != b2);
    let shared: Vec<(&RationalPoint, &RationalPoint, &RationalPoint)> = [
        (a1, a2, b1, b2),
        (a1, a2, b2, b1),
        (a2, a1, b1, b2),
        (a2, a1, b2, b1),
    ]
    .into_iter()
    .filter(|(p, _, q, _)| p == q)
    .map(|(p, a_other, _, b_other)| (p, a_other, b_other))
    .collect();

    match shared.len() {
        0 => {}
        1 => {
            let (common, a_other, b_other) = shared[0];
            if orientation(common, a_other, b_other) != Orientation::Collinear {
                return SegmentCrossing::SharedEndpoint;
            }
            // Collinear: they only touch at `common` if the far ends point
            // in opposite directions.
            let dot = (&a_other.x - &common.x) * (&b_other.x - &common.x)
                + (&a_other.y - &common.y) * (&b_other.y - &common.y);
            return if dot.is_negative() {
                SegmentCrossing::SharedEndpoint
            } else {
                SegmentCrossing::Degenerate
            };
        }
        _ => return SegmentCrossing::Degenerate,
    }

    let o1 = orientation(a1, a2, b1);
    let o2 = orientation(a1, a2, b2);
    let o3 = orientation(b1, b2, a1);
    let o4 = orientation(b1, b2, a2);

    let touches = (o1 == Orientation::Collinear && within_box(a1, a2, b1))
        || (o2 == Orientation::Collinear && within_box(a1, a2, b2))
        || (o3 == Orientation::Collinear && within_box(b1, b2, a1))
        || (o4 == Orientation::Collinear && within_box(b1, b2, a2));
    if touches {
        return SegmentCrossing::Degenerate;
    }
    if [o1, o2, o3, o4].contains(&Orientation::Collinear) {
        return SegmentCrossing::None;
    }
    if o1 != o2 && o3 != o4 {
        // a1 + t (a2 - a1), t = (b1 - a1) x (b2 - b1) / (a2 - a1) x (b2 - b1)
        let denom = direction_cross(a1, a2, b1, b2);
        let numer = direction_cross(a1, b1, b1, b2);
        let t = numer / denom;
        let x = &a1.x + &t * (&a2.x - &a1.x);
        let y = &a1.y + &t * (&a2.y - &a1.y);
        return SegmentCrossing::InteriorCrossing(RationalPoint::new(x, y));
    }
    SegmentCrossing::None
}

/// Counter-clockwise angular comparison of the directions `p - center` and
/// `q - center`, starting from the positive x axis.
pub(crate) fn angular_cmp(
    center: &RationalPoint,
    p: &RationalPoint,
    q: &RationalPoint,
) -> Ordering {
    // Upper half (angle in [0, pi)) sorts before the lower half.
    let half = |r: &RationalPoint| {
        let dy = &r.y - &center.y;
        let dx = &r.x - &center.x;
        if dy.is_positive() || (dy.is_zero() && dx.is_positive()) {
            0
        } else {
            1
        }
    };
    half(p)
        .cmp(&half(q))
        .then_with(|| match orientation(center, p, q) {
            Orientation::CounterClockwise => Ordering::Less,
            Orientation::Clockwise => Ordering::Greater,
            Orientation::Collinear => Ordering::Equal,
        })
}
