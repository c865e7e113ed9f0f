//! Plane sweep that finds a forbidden meeting among many segments.
//!
//! This is the classic detection sweep: segments are inserted at their left
//! endpoints and removed at their right endpoints, and only segments that
//! become neighbors in the vertical order are tested. The leftmost forbidden
//! meeting is always found, while bundles of nearly parallel segments cost
//! `O(n log n)` exact comparisons instead of a quadratic number of tests.

use std::cmp::Ordering;

use crate::exact::{cmp_x, cmp_y, cross_sign, lex_cmp, orient_h, segments_meet, HPoint};
use crate::filter::{orient_f, surely_apart};
use crate::Sign;

/// A segment with endpoints ordered left to right, or bottom to top when
/// vertical.
pub struct SweepSeg<'a> {
    pub l: &'a HPoint,
    pub r: &'a HPoint,
    pub fl: (f64, f64),
    pub fr: (f64, f64),
    vertical: bool,
}

impl<'a> SweepSeg<'a> {
    pub fn new(a: &'a HPoint, b: &'a HPoint, fa: (f64, f64), fb: (f64, f64)) -> Self {
        let (l, r, fl, fr) = if lex_cmp(a, b) == Ordering::Greater {
            (b, a, fb, fa)
        } else {
            (a, b, fa, fb)
        };
        let vertical = cmp_x(l, r) == Ordering::Equal;
        SweepSeg { l, r, fl, fr, vertical }
    }
}

fn sure_cmp(a: f64, b: f64) -> Option<Ordering> {
    let tol = (a.abs() + b.abs()) * 1e-14 + 1e-300;
    if a + tol < b {
        Some(Ordering::Less)
    } else if b + tol < a {
        Some(Ordering::Greater)
    } else {
        None
    }
}

fn point_cmp(a: &HPoint, fa: (f64, f64), b: &HPoint, fb: (f64, f64)) -> Ordering {
    match sure_cmp(fa.0, fb.0) {
        Some(o) => o,
        None => cmp_x(a, b).then_with(|| sure_cmp(fa.1, fb.1).unwrap_or_else(|| cmp_y(a, b))),
    }
}

/// Side of `p` relative to the non-vertical segment `t`.
fn side(t: &SweepSeg, p: &HPoint, fp: (f64, f64)) -> Sign {
    orient_f(t.fl, t.fr, fp).unwrap_or_else(|| orient_h(t.l, t.r, p))
}

/// Vertical order of `s` against `t` where `s` starts no further left.
fn probe(s: &SweepSeg, t: &SweepSeg) -> Ordering {
    if t.vertical {
        return match point_cmp(s.l, s.fl, t.l, t.fl) {
            Ordering::Equal if s.vertical => point_cmp(s.r, s.fr, t.r, t.fr),
            // A vertical segment counts as steeper than anything.
            Ordering::Equal => Ordering::Less,
            o => o,
        };
    }
    match side(t, s.l, s.fl) {
        Sign::Positive => Ordering::Greater,
        Sign::Negative => Ordering::Less,
        Sign::Zero if s.vertical => Ordering::Greater,
        Sign::Zero => match cross_sign(t.l, t.r, s.l, s.r) {
            Sign::Positive => Ordering::Greater,
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
        },
    }
}

fn seg_cmp(segs: &[SweepSeg], i: usize, j: usize) -> Ordering {
    if i == j {
        return Ordering::Equal;
    }
    let (s, t) = (&segs[i], &segs[j]);
    let o = match sure_cmp(s.fl.0, t.fl.0).unwrap_or_else(|| cmp_x(s.l, t.l)) {
        Ordering::Less => probe(t, s).reverse(),
        _ => probe(s, t),
    };
    o.then(i.cmp(&j))
}

/// First pair of segments that meet although `allowed` says they may not;
/// `None` if there is no such pair.
pub fn first_conflict(segs: &[SweepSeg], allowed: &dyn Fn(usize, usize) -> bool) -> Option<(usize, usize)> {
    // (segment, is_insert); ordered by event point.
    let mut events: Vec<(usize, bool)> = Vec::with_capacity(2 * segs.len());
    for i in 0..segs.len() {
        events.push((i, true));
        events.push((i, false));
    }
    let at = |e: &(usize, bool)| -> (&HPoint, (f64, f64)) {
        let s = &segs[e.0];
        if e.1 {
            (s.l, s.fl)
        } else {
            (s.r, s.fr)
        }
    };
    events.sort_by(|a, b| {
        let (pa, fa) = at(a);
        let (pb, fb) = at(b);
        point_cmp(pa, fa, pb, fb)
    });

    let meets = |a: usize, b: usize| -> bool {
        if allowed(a, b) {
            return false;
        }
        let (s, t) = (&segs[a], &segs[b]);
        !surely_apart(s.fl, s.fr, t.fl, t.fr) && segments_meet(s.l, s.r, t.l, t.r)
    };

    let mut status: Vec<usize> = Vec::new();
    let mut k = 0;
    while k < events.len() {
        let (p, fp) = at(&events[k]);
        let mut end = k + 1;
        while end < events.len() {
            let (q, fq) = at(&events[end]);
            if point_cmp(p, fp, q, fq) != Ordering::Equal {
                break;
            }
            end += 1;
        }
        let group = &events[k..end];
        // Every segment ending or starting here shares this point.
        for a in 0..group.len() {
            for b in a + 1..group.len() {
                let (x, y) = (group[a].0, group[b].0);
                if x != y && !allowed(x, y) {
                    return Some((x.min(y), x.max(y)));
                }
            }
        }
        for &(i, ins) in group {
            if ins {
                continue;
            }
            let pos = locate(segs, &status, i);
            status.remove(pos);
            if pos > 0 && pos < status.len() && meets(status[pos - 1], status[pos]) {
                return Some((status[pos - 1], status[pos]));
            }
        }
        for &(i, ins) in group {
            if !ins {
                continue;
            }
            let pos = status.partition_point(|&u| seg_cmp(segs, u, i) == Ordering::Less);
            status.insert(pos, i);
            if pos > 0 && meets(status[pos - 1], i) {
                return Some((status[pos - 1], i));
            }
            if pos + 1 < status.len() && meets(i, status[pos + 1]) {
                return Some((i, status[pos + 1]));
            }
        }
        k = end;
    }
    None
}

fn locate(segs: &[SweepSeg], status: &[usize], i: usize) -> usize {
    let pos = status.partition_point(|&u| seg_cmp(segs, u, i) == Ordering::Less);
    if status.get(pos) == Some(&i) {
        return pos;
    }
    status
        .iter()
        .position(|&u| u == i)
        .expect("segment being removed is in the sweep status")
}
