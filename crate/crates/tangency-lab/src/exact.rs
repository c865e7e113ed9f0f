//! Division-free exact predicates on homogeneous integer points.

use std::cmp::Ordering;

use crate::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::{Point, Sign};

/// A point in homogeneous integer form `(x/w, y/w)` with `w > 0`.
#[derive(Debug, Clone)]
pub struct HPoint {
    pub x: BigInt,
    pub y: BigInt,
    pub w: BigInt,
}

impl HPoint {
    pub fn from_point(p: &Point) -> HPoint {
        let w = p.x.denom().lcm(p.y.denom());
        HPoint {
            x: p.x.numer() * (&w / p.x.denom()),
            y: p.y.numer() * (&w / p.y.denom()),
            w,
        }
    }
}

pub fn orient_h(a: &HPoint, b: &HPoint, c: &HPoint) -> Sign {
    let det = &a.x * (&b.y * &c.w - &c.y * &b.w) - &a.y * (&b.x * &c.w - &c.x * &b.w)
        + &a.w * (&b.x * &c.y - &c.x * &b.y);
    if det.is_positive() {
        Sign::Positive
    } else if det.is_negative() {
        Sign::Negative
    } else {
        Sign::Zero
    }
}

/// Exact "do the closed segments meet" test without forming rationals.
pub fn segments_meet(a: &HPoint, b: &HPoint, c: &HPoint, d: &HPoint) -> bool {
    let o1 = orient_h(a, b, c);
    let o2 = orient_h(a, b, d);
    if o1 != Sign::Zero && o1 == o2 {
        return false;
    }
    let o3 = orient_h(c, d, a);
    let o4 = orient_h(c, d, b);
    if o3 != Sign::Zero && o3 == o4 {
        return false;
    }
    if o1 == Sign::Zero && o2 == Sign::Zero {
        // Collinear: compare projections, cross-multiplied by positive w.
        let key = |p: &HPoint, q: &HPoint| -> Ordering {
            (&p.x * &q.w)
                .cmp(&(&q.x * &p.w))
                .then_with(|| (&p.y * &q.w).cmp(&(&q.y * &p.w)))
        };
        let (s0, s1) = if key(a, b) == Ordering::Greater { (b, a) } else { (a, b) };
        let (t0, t1) = if key(c, d) == Ordering::Greater { (d, c) } else { (c, d) };
        return key(s0, t1) != Ordering::Greater && key(t0, s1) != Ordering::Greater;
    }
    true
}

/// Compare x-coordinates.
pub fn cmp_x(a: &HPoint, b: &HPoint) -> Ordering {
    (&a.x * &b.w).cmp(&(&b.x * &a.w))
}

/// Compare y-coordinates.
pub fn cmp_y(a: &HPoint, b: &HPoint) -> Ordering {
    (&a.y * &b.w).cmp(&(&b.y * &a.w))
}

/// Lexicographic order by `x`, then `y`.
pub fn lex_cmp(a: &HPoint, b: &HPoint) -> Ordering {
    cmp_x(a, b).then_with(|| cmp_y(a, b))
}

/// Sign of `cross(b - a, d - c)`.
pub fn cross_sign(a: &HPoint, b: &HPoint, c: &HPoint, d: &HPoint) -> Sign {
    let ux = &b.x * &a.w - &a.x * &b.w;
    let uy = &b.y * &a.w - &a.y * &b.w;
    let vx = &d.x * &c.w - &c.x * &d.w;
    let vy = &d.y * &c.w - &c.y * &d.w;
    let c = ux * vy - uy * vx;
    if c.is_positive() {
        Sign::Positive
    } else if c.is_negative() {
        Sign::Negative
    } else {
        Sign::Zero
    }
}
