//! Parallel offsets of polylines with miter joins and square caps.
//!
//! Normals are scaled by the max-norm of their segment direction instead of
//! the Euclidean norm, so every offset point stays rational. The offset
//! distance of a segment is therefore between `d` and `d * sqrt(2)`.

use num_traits::{Signed, Zero};

use crate::{Point, Rational};

/// Left (+1) or right (-1) of the direction of travel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

pub fn max_norm(v: &Point) -> Rational {
    let ax = v.x.abs();
    let ay = v.y.abs();
    if ax > ay {
        ax
    } else {
        ay
    }
}

/// Direction scaled to unit max-norm.
pub fn unit(v: &Point) -> Point {
    let m = max_norm(v);
    Point::new(&v.x / &m, &v.y / &m)
}

/// Normal on `side`, scaled to unit max-norm.
pub fn normal(v: &Point, side: Side) -> Point {
    let p = unit(v).perp();
    match side {
        Side::Left => p,
        Side::Right => p.neg(),
    }
}

/// Offset of the point `p` on the segment with direction `v`.
pub fn shift(p: &Point, v: &Point, side: Side, d: &Rational) -> Point {
    p.add(&normal(v, side).scale(d))
}

/// Join points replacing vertex `v` between incoming direction `a` and
/// outgoing direction `b`.
///
/// Inner sides and outer turns of at most 90 degrees use a miter; sharper
/// outer turns get a square cap of two points.
pub fn join(v: &Point, a: &Point, b: &Point, side: Side, d: &Rational) -> Vec<Point> {
    let na = normal(a, side);
    let nb = normal(b, side);
    let cr = a.cross(b);
    let dot = a.dot(b);
    if cr.is_zero() {
        if dot.is_positive() {
            return vec![v.add(&na.scale(d))];
        }
        let ua = unit(a);
        return vec![
            v.add(&na.add(&ua).scale(d)),
            v.add(&nb.add(&ua).scale(d)),
        ];
    }
    let inner = cr.is_positive() == (side == Side::Left);
    if inner || !dot.is_negative() {
        // v + d*na + t*a == v + d*nb + u*b
        let t = nb.sub(&na).scale(d).cross(b) / &cr;
        return vec![v.add(&na.scale(d)).add(&a.scale(&t))];
    }
    let ua = unit(a);
    let ub = unit(b);
    vec![
        v.add(&na.add(&ua).scale(d)),
        v.add(&nb.sub(&ub).scale(d)),
    ]
}

/// Intersection of the lines `p + t*u` and `q + s*w`; `None` if parallel.
pub fn line_meet(p: &Point, u: &Point, q: &Point, w: &Point) -> Option<(Point, Rational)> {
    let den = u.cross(w);
    if den.is_zero() {
        return None;
    }
    let t = q.sub(p).cross(w) / den;
    Some((p.add(&u.scale(&t)), t))
}

/// Full offset of an open polyline on one side, ends shifted along their
/// segment normals.
pub fn offset_polyline(vs: &[Point], side: Side, d: &Rational) -> Vec<Point> {
    let n = vs.len();
    assert!(n >= 2);
    let mut out = Vec::with_capacity(n + 4);
    out.push(shift(&vs[0], &vs[1].sub(&vs[0]), side, d));
    for i in 1..n - 1 {
        let a = vs[i].sub(&vs[i - 1]);
        let b = vs[i + 1].sub(&vs[i]);
        out.extend(join(&vs[i], &a, &b, side, d));
    }
    out.push(shift(&vs[n - 1], &vs[n - 1].sub(&vs[n - 2]), side, d));
    out
}
