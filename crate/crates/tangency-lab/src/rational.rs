//! `"num/den"` text form of rationals, and serde adapters built on it.

use std::str::FromStr;

use crate::BigInt;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::{Point, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed rational {0:?}")]
pub struct ParseRationalError(pub String);

/// Canonical text: lowest terms, positive denominator, always with a slash.
pub fn to_text(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `"n/d"` or a bare integer `"n"`.
pub fn from_text(s: &str) -> Result<Rational, ParseRationalError> {
    let bad = || ParseRationalError(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn point_to_text(p: &Point) -> [String; 2] {
    [to_text(&p.x), to_text(&p.y)]
}

pub fn point_from_text(p: &[String; 2]) -> Result<Point, ParseRationalError> {
    Ok(Point::new(from_text(&p[0])?, from_text(&p[1])?))
}

/// Serde adapter for a single rational field.
pub mod text {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        to_text(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        from_text(&s).map_err(D::Error::custom)
    }
}

/// Serde adapter for a point stored as `["x", "y"]`.
pub mod point_text {
    use super::*;

    pub fn serialize<S: Serializer>(p: &Point, s: S) -> Result<S::Ok, S::Error> {
        point_to_text(p).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Point, D::Error> {
        let p = <[String; 2]>::deserialize(d)?;
        point_from_text(&p).map_err(D::Error::custom)
    }
}

/// Serde adapter for a list of points.
pub mod points_text {
    use super::*;

    pub fn serialize<S: Serializer>(ps: &[Point], s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<[String; 2]> = ps.iter().map(point_to_text).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Point>, D::Error> {
        let v = Vec::<[String; 2]>::deserialize(d)?;
        v.iter()
            .map(|p| point_from_text(p).map_err(D::Error::custom))
            .collect()
    }
}

/// Lossy conversion for plotting and float prefilters: within a couple of
/// ulps of the exact value.
pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::{Signed, ToPrimitive};
    let n = r.numer().abs();
    let d = r.denom();
    if n.is_zero() {
        return 0.0;
    }
    // Scale so the integer quotient carries 64 significant bits.
    let k = 64 - (n.bits() as i64 - d.bits() as i64);
    let q = if k >= 0 { (n << k as u64) / d } else { n / (d << (-k) as u64) };
    let v = q.to_f64().expect("64-bit quotient fits") * pow2(-k);
    if r.numer().is_negative() {
        -v
    } else {
        v
    }
}

/// `2^e` in floating point, saturating at zero and infinity.
fn pow2(e: i64) -> f64 {
    let half = (e / 2).clamp(-1100, 1100) as i32;
    let rest = (e - e / 2).clamp(-1100, 1100) as i32;
    2f64.powi(half) * 2f64.powi(rest)
}
