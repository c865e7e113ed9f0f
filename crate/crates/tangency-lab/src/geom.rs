//! Exact planar primitives, generic over an ordered field.
//!
//! Nothing here rounds. With `T = Rational` every predicate is decided
//! exactly, which is what makes "only common point" and "branches do not
//! alternate" checkable at all.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_rational::Ratio;
use num_traits::{Num, Signed};
use thiserror::Error;

/// Ordered field usable as a coordinate type.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed {
    /// Sign of `(b - a) x (c - a)`. Types with a cheaper exact route
    /// override this.
    fn orient_sign(a: &Point<Self>, b: &Point<Self>, c: &Point<Self>) -> Sign {
        Sign::of(&b.sub(a).cross(&c.sub(a)))
    }

    /// Total order; panics on incomparable values such as NaN.
    fn compare(&self, o: &Self) -> Ordering {
        self.partial_cmp(o).expect("ordered field")
    }

    /// Common point of the non-parallel lines `ab` and `cd`.
    fn meet(a: &Point<Self>, b: &Point<Self>, c: &Point<Self>, d: &Point<Self>) -> Point<Self> {
        let u = b.sub(a);
        let v = d.sub(c);
        let t = c.sub(a).cross(&v) / u.cross(&v);
        a.add(&u.scale(&t))
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
impl Scalar for i32 {}
impl Scalar for i64 {}
impl Scalar for i128 {}
impl Scalar for crate::BigInt {}
impl Scalar for Ratio<i32> {}
impl Scalar for Ratio<i64> {}
impl Scalar for Ratio<i128> {}

impl Scalar for crate::Rational {
    /// Cross-multiplied over the (positive) denominators, so no gcd is
    /// ever taken. With `d(u, v) = u - v` written as `n / (du * dv)`, the
    /// common factor `a.x.denom() * a.y.denom()` drops out of the sign.
    fn orient_sign(a: &Point<Self>, b: &Point<Self>, c: &Point<Self>) -> Sign {
        let diff = |u: &Self, v: &Self| u.numer() * v.denom() - v.numer() * u.denom();
        let lhs = diff(&b.x, &a.x) * diff(&c.y, &a.y) * (b.y.denom() * c.x.denom());
        let rhs = diff(&b.y, &a.y) * diff(&c.x, &a.x) * (b.x.denom() * c.y.denom());
        match lhs.cmp(&rhs) {
            Ordering::Greater => Sign::Positive,
            Ordering::Equal => Sign::Zero,
            Ordering::Less => Sign::Negative,
        }
    }

    fn compare(&self, o: &Self) -> Ordering {
        if self.denom() == o.denom() {
            return self.numer().cmp(o.numer());
        }
        (self.numer() * o.denom()).cmp(&(o.numer() * self.denom()))
    }

    /// Homogeneous lines through the endpoints, crossed; only the two final
    /// coordinates are reduced.
    fn meet(a: &Point<Self>, b: &Point<Self>, c: &Point<Self>, d: &Point<Self>) -> Point<Self> {
        let h = |p: &Point<Self>| {
            [
                p.x.numer() * p.y.denom(),
                p.y.numer() * p.x.denom(),
                p.x.denom() * p.y.denom(),
            ]
        };
        let cross = |p: &[crate::BigInt; 3], q: &[crate::BigInt; 3]| {
            [
                &p[1] * &q[2] - &p[2] * &q[1],
                &p[2] * &q[0] - &p[0] * &q[2],
                &p[0] * &q[1] - &p[1] * &q[0],
            ]
        };
        let [x, y, w] = cross(&cross(&h(a), &h(b)), &cross(&h(c), &h(d)));
        Point::new(Self::new(x, w.clone()), Self::new(y, w))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("slope 0 meets the circle only at its bottom point")]
    HorizontalSlope,
    #[error("base point is not the bottommost point of the circle")]
    BaseNotBottom,
    #[error("polyline needs at least two vertices")]
    TooFewVertices,
    #[error("consecutive vertices {0} and {1} coincide")]
    RepeatedVertex(usize, usize),
    #[error("degenerate segment")]
    DegenerateSegment,
}

/// Sign of an orientation test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of<T: Scalar>(v: &T) -> Sign {
        if v.is_positive() {
            Sign::Positive
        } else if v.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    pub fn add(&self, o: &Point<T>) -> Point<T> {
        Point::new(self.x.clone() + o.x.clone(), self.y.clone() + o.y.clone())
    }

    pub fn sub(&self, o: &Point<T>) -> Point<T> {
        Point::new(self.x.clone() - o.x.clone(), self.y.clone() - o.y.clone())
    }

    pub fn scale(&self, s: &T) -> Point<T> {
        Point::new(self.x.clone() * s.clone(), self.y.clone() * s.clone())
    }

    pub fn neg(&self) -> Point<T> {
        Point::new(-self.x.clone(), -self.y.clone())
    }

    /// Counterclockwise quarter turn, as a vector.
    pub fn perp(&self) -> Point<T> {
        Point::new(-self.y.clone(), self.x.clone())
    }

    pub fn dot(&self, o: &Point<T>) -> T {
        self.x.clone() * o.x.clone() + self.y.clone() * o.y.clone()
    }

    pub fn cross(&self, o: &Point<T>) -> T {
        self.x.clone() * o.y.clone() - self.y.clone() * o.x.clone()
    }

    pub fn dist2(&self, o: &Point<T>) -> T {
        let d = self.sub(o);
        d.dot(&d)
    }

    /// Lexicographic order, x first.
    pub fn lex_cmp(&self, o: &Point<T>) -> Ordering {
        self.x.compare(&o.x).then_with(|| self.y.compare(&o.y))
    }
}

/// Sign of `(b - a) x (c - a)`.
pub fn orient<T: Scalar>(a: &Point<T>, b: &Point<T>, c: &Point<T>) -> Sign {
    T::orient_sign(a, b, c)
}

/// Non-vertical line `y = slope * x + intercept`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Line<T> {
    pub slope: T,
    pub intercept: T,
}

impl<T: Scalar> Line<T> {
    pub fn new(slope: T, intercept: T) -> Self {
        Line { slope, intercept }
    }

    pub fn through(p: &Point<T>, slope: T) -> Self {
        let intercept = p.y.clone() - slope.clone() * p.x.clone();
        Line { slope, intercept }
    }

    pub fn y_at(&self, x: &T) -> T {
        self.slope.clone() * x.clone() + self.intercept.clone()
    }

    pub fn point_at(&self, x: &T) -> Point<T> {
        Point::new(x.clone(), self.y_at(x))
    }

    pub fn contains(&self, p: &Point<T>) -> bool {
        self.y_at(&p.x) == p.y
    }

    /// Positive above the line, negative below.
    pub fn side(&self, p: &Point<T>) -> Sign {
        Sign::of(&(p.y.clone() - self.y_at(&p.x)))
    }

    /// Common point of two non-parallel lines.
    pub fn meet(&self, o: &Line<T>) -> Option<Point<T>> {
        let ds = self.slope.clone() - o.slope.clone();
        if ds.is_zero() {
            return None;
        }
        let x = (o.intercept.clone() - self.intercept.clone()) / ds;
        Some(self.point_at(&x))
    }

    /// Direction vector `(1, slope)`.
    pub fn direction(&self) -> Point<T> {
        Point::new(T::one(), self.slope.clone())
    }

    /// Squared distance from a point, exact.
    pub fn dist2(&self, p: &Point<T>) -> T {
        let r = p.y.clone() - self.y_at(&p.x);
        r.clone() * r / (T::one() + self.slope.clone() * self.slope.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Segment<T> {
    pub a: Point<T>,
    pub b: Point<T>,
}

impl<T: Scalar> Segment<T> {
    pub fn new(a: Point<T>, b: Point<T>) -> Result<Self, GeomError> {
        if a == b {
            return Err(GeomError::DegenerateSegment);
        }
        Ok(Segment { a, b })
    }

    pub fn dir(&self) -> Point<T> {
        self.b.sub(&self.a)
    }

    /// True if `p` lies on the closed segment.
    pub fn contains(&self, p: &Point<T>) -> bool {
        orient(&self.a, &self.b, p) == Sign::Zero && in_box(&self.a, &self.b, p)
    }
}

fn in_box<T: Scalar>(a: &Point<T>, b: &Point<T>, p: &Point<T>) -> bool {
    let within = |u: &T, v: &T, w: &T| {
        let (lo, hi) = if u.compare(v).is_le() { (u, v) } else { (v, u) };
        lo.compare(w).is_le() && w.compare(hi).is_le()
    };
    within(&a.x, &b.x, &p.x) && within(&a.y, &b.y, &p.y)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Intersection<T> {
    Empty,
    Point(Point<T>),
    /// Endpoints in lexicographic order.
    Overlap(Point<T>, Point<T>),
}

/// Exact intersection of two closed segments.
pub fn segment_intersect<T: Scalar>(s: &Segment<T>, t: &Segment<T>) -> Intersection<T> {
    let o1 = orient(&s.a, &s.b, &t.a);
    let o2 = orient(&s.a, &s.b, &t.b);
    let o3 = orient(&t.a, &t.b, &s.a);
    let o4 = orient(&t.a, &t.b, &s.b);

    if o1 == Sign::Zero && o2 == Sign::Zero {
        return collinear_overlap(s, t);
    }
    if (o1 != Sign::Zero && o1 == o2) || (o3 != Sign::Zero && o3 == o4) {
        return Intersection::Empty;
    }
    // Non-parallel and straddling: one common point, possibly an endpoint.
    if o1 == Sign::Zero {
        return Intersection::Point(t.a.clone());
    }
    if o2 == Sign::Zero {
        return Intersection::Point(t.b.clone());
    }
    if o3 == Sign::Zero {
        return Intersection::Point(s.a.clone());
    }
    if o4 == Sign::Zero {
        return Intersection::Point(s.b.clone());
    }
    Intersection::Point(T::meet(&s.a, &s.b, &t.a, &t.b))
}

fn collinear_overlap<T: Scalar>(s: &Segment<T>, t: &Segment<T>) -> Intersection<T> {
    let (s0, s1) = ordered(&s.a, &s.b);
    let (t0, t1) = ordered(&t.a, &t.b);
    let lo = if s0.lex_cmp(t0) == Ordering::Less { t0 } else { s0 };
    let hi = if s1.lex_cmp(t1) == Ordering::Less { s1 } else { t1 };
    match lo.lex_cmp(hi) {
        Ordering::Less => Intersection::Overlap(lo.clone(), hi.clone()),
        Ordering::Equal => Intersection::Point(lo.clone()),
        Ordering::Greater => Intersection::Empty,
    }
}

fn ordered<'a, T: Scalar>(a: &'a Point<T>, b: &'a Point<T>) -> (&'a Point<T>, &'a Point<T>) {
    if a.lex_cmp(b) == Ordering::Greater {
        (b, a)
    } else {
        (a, b)
    }
}

/// Second intersection of the line through the bottom point `base` of the
/// circle `(center, r)` with the given slope.
///
/// With `center = (a, c)` and slope `s` the point is
/// `(a + 2rs/(1+s^2), c - r + 2rs^2/(1+s^2))`, which is rational whenever the
/// inputs are.
pub fn line_second_circle_intersection<T: Scalar>(
    center: &Point<T>,
    r: &T,
    base: &Point<T>,
    slope: &T,
) -> Result<Point<T>, GeomError> {
    if slope.is_zero() {
        return Err(GeomError::HorizontalSlope);
    }
    if base.x != center.x || base.y.clone() + r.clone() != center.y {
        return Err(GeomError::BaseNotBottom);
    }
    let one = T::one();
    let two = one.clone() + one.clone();
    let q = one + slope.clone() * slope.clone();
    let t = two * r.clone() * slope.clone() / q;
    Ok(Point::new(
        center.x.clone() + t.clone(),
        center.y.clone() - r.clone() + t * slope.clone(),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polyline<T> {
    pub vertices: Vec<Point<T>>,
}

impl<T: Scalar> Polyline<T> {
    pub fn new(vertices: Vec<Point<T>>) -> Result<Self, GeomError> {
        if vertices.len() < 2 {
            return Err(GeomError::TooFewVertices);
        }
        for i in 1..vertices.len() {
            if vertices[i] == vertices[i - 1] {
                return Err(GeomError::RepeatedVertex(i - 1, i));
            }
        }
        Ok(Polyline { vertices })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn segment_count(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn segment(&self, i: usize) -> Segment<T> {
        Segment {
            a: self.vertices[i].clone(),
            b: self.vertices[i + 1].clone(),
        }
    }

    pub fn segments(&self) -> impl Iterator<Item = Segment<T>> + '_ {
        self.vertices.windows(2).map(|w| Segment {
            a: w[0].clone(),
            b: w[1].clone(),
        })
    }

    pub fn first(&self) -> &Point<T> {
        &self.vertices[0]
    }

    pub fn last(&self) -> &Point<T> {
        &self.vertices[self.vertices.len() - 1]
    }

    pub fn translate(&self, v: &Point<T>) -> Polyline<T> {
        Polyline {
            vertices: self.vertices.iter().map(|p| p.add(v)).collect(),
        }
    }
}

/// Axis-aligned bounds of a point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds<T> {
    pub xmin: T,
    pub xmax: T,
    pub ymin: T,
    pub ymax: T,
}

impl<T: Scalar> Bounds<T> {
    pub fn of_segment(a: &Point<T>, b: &Point<T>) -> Self {
        let (xmin, xmax) = minmax(&a.x, &b.x);
        let (ymin, ymax) = minmax(&a.y, &b.y);
        Bounds { xmin, xmax, ymin, ymax }
    }

    pub fn of_points<'a>(pts: impl IntoIterator<Item = &'a Point<T>>) -> Option<Self>
    where
        T: 'a,
    {
        let mut it = pts.into_iter();
        let p = it.next()?;
        let mut b = Bounds {
            xmin: p.x.clone(),
            xmax: p.x.clone(),
            ymin: p.y.clone(),
            ymax: p.y.clone(),
        };
        for p in it {
            if p.x < b.xmin {
                b.xmin = p.x.clone();
            }
            if p.x > b.xmax {
                b.xmax = p.x.clone();
            }
            if p.y < b.ymin {
                b.ymin = p.y.clone();
            }
            if p.y > b.ymax {
                b.ymax = p.y.clone();
            }
        }
        Some(b)
    }

    pub fn overlaps(&self, o: &Bounds<T>) -> bool {
        self.xmin <= o.xmax && o.xmin <= self.xmax && self.ymin <= o.ymax && o.ymin <= self.ymax
    }
}

fn minmax<T: Scalar>(a: &T, b: &T) -> (T, T) {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}
