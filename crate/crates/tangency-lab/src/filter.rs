//! Float prefilters that only ever answer when the answer is certain.

use crate::Sign;

/// Float orientation with a conservative error bound; `None` when the sign
/// is not certain. Inputs are rationals rounded to nearest, so each
/// coordinate is off by at most a few ulps.
pub fn orient_f(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> Option<Sign> {
    const EPS: f64 = 1.0 / (1u64 << 50) as f64;
    let m = a.0.abs().max(a.1.abs()).max(b.0.abs()).max(b.1.abs()).max(c.0.abs()).max(c.1.abs());
    let (u, v, w, z) = (b.0 - a.0, c.1 - a.1, b.1 - a.1, c.0 - a.0);
    let (p, q) = (u * v, w * z);
    let det = p - q;
    let err = (p.abs() + q.abs()) * 4.0 * EPS + (u.abs() + v.abs() + w.abs() + z.abs()) * m * 8.0 * EPS + 1e-300;
    if det > err {
        Some(Sign::Positive)
    } else if det < -err {
        Some(Sign::Negative)
    } else {
        None
    }
}

/// True when floats alone prove the closed segments are disjoint.
pub fn surely_apart(a: (f64, f64), b: (f64, f64), c: (f64, f64), d: (f64, f64)) -> bool {
    let split = |x: Option<Sign>, y: Option<Sign>| matches!((x, y), (Some(s), Some(t)) if s == t && s != Sign::Zero);
    split(orient_f(a, b, c), orient_f(a, b, d)) || split(orient_f(c, d, a), orient_f(c, d, b))
}
