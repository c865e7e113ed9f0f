//! Red/blue curve families with many tangencies, built and certified in exact
//! rational arithmetic.
//!
//! The pipeline: [`incidence`] generates a grid point-line system, [`synthesis`]
//! turns every incidence into a red-blue tangency, [`verifier`] re-derives all
//! intersections from raw geometry, and [`patterns`] runs the forbidden-pattern
//! detectors on the result.

pub(crate) mod exact;
pub(crate) mod filter;
pub mod geom;
pub mod incidence;
pub mod patterns;
pub mod rational;
pub(crate) mod sweep;
pub mod synthesis;
pub mod verifier;

pub use malachite_bigint::BigInt;

/// Exact coordinate type used by the pipeline.
pub type Rational = num_rational::Ratio<BigInt>;
pub type Point = geom::Point<Rational>;
pub type Line = geom::Line<Rational>;
pub type Segment = geom::Segment<Rational>;
pub type Polyline = geom::Polyline<Rational>;
pub type Bounds = geom::Bounds<Rational>;

pub use geom::{orient, segment_intersect, Intersection, Sign};

/// Shorthand for an integer-valued rational.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Shorthand for `n/d`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn pt(x: i64, y: i64) -> Point {
    Point::new(int(x), int(y))
}
