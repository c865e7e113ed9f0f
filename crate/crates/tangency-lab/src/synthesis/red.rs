//! Red curves.
//!
//! Lines are placed one by one, topmost at the left side first. Curve `i`
//! walks a guide path: its line, except that before each of its points it
//! leaves the line and runs just outside the blue polygon up to the anchor.
//! Whenever the guide would cross an earlier red curve, the new curve instead
//! hugs that curve toward its free end, around the end cap and back on the
//! other side, until the hugging path meets the guide again ahead of the
//! crossing. Later curves hug at smaller offsets, so corridors nest.

use std::time::Instant;

use num_traits::{Signed, Zero};

use super::blue::DiskSpec;
use super::offset::{join, line_meet, shift, Side};
use super::{sqrt_floor, BoxB, Budget, Color, Curve, SynthError};
use crate::incidence::{line_order_at, PointLineSystem};
use crate::filter::surely_apart;
use crate::geom::Scalar;
use crate::rational::to_f64;
use crate::{int, orient, segment_intersect, Intersection, Point, Polyline, Rational, Segment, Sign};

/// Each curve hugs at `1/OFFSET_RATIO` of the previous curve's offset.
pub const OFFSET_RATIO: i64 = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoutingParams {
    /// Offset of the first curve placed.
    pub base_offset: Rational,
    /// Offset used by each red curve, indexed by line.
    pub per_curve_offset: Vec<Rational>,
    pub min_feature_gap: Rational,
}

impl RoutingParams {
    /// Offsets decreasing geometrically in placement order, starting from
    /// the largest power of two below `min_feature_gap / (4n)`.
    pub fn new(sys: &PointLineSystem, bx: &BoxB, disks: &[DiskSpec]) -> Self {
        let gap = min_feature_gap(sys, bx, disks);
        let n = sys.lines.len().max(1) as i64;
        Self::with_base(sys, bx, pow2_floor(&(&gap / int(4 * n))), gap)
    }

    pub fn with_base(sys: &PointLineSystem, bx: &BoxB, base: Rational, gap: Rational) -> Self {
        let order = placement_order(sys, bx);
        let mut per = vec![Rational::zero(); sys.lines.len()];
        let mut d = base.clone();
        for &i in &order {
            per[i] = d.clone();
            d /= int(OFFSET_RATIO);
        }
        RoutingParams {
            base_offset: base,
            per_curve_offset: per,
            min_feature_gap: gap,
        }
    }

    /// Same scheme with the base offset divided by `factor`.
    pub fn shrunk(&self, sys: &PointLineSystem, bx: &BoxB, factor: i64) -> Self {
        Self::with_base(sys, bx, &self.base_offset / int(factor), self.min_feature_gap.clone())
    }

    pub fn max_offset(&self) -> Rational {
        self.per_curve_offset.iter().max().cloned().unwrap_or_else(Rational::zero)
    }

    /// All offsets positive and `n * max < gap / 2`.
    pub fn is_valid(&self) -> bool {
        let n = int(self.per_curve_offset.len() as i64);
        self.per_curve_offset.iter().all(|d| d.is_positive())
            && n * self.max_offset() < &self.min_feature_gap / int(2)
    }
}

/// Largest power of two not above `v > 0`.
pub fn pow2_floor(v: &Rational) -> Rational {
    let two = int(2);
    let mut p = Rational::from_integer(1.into());
    while &p > v {
        p /= &two;
    }
    while &(&p * &two) <= v {
        p *= &two;
    }
    p
}

/// Hugging vertices are rounded to multiples of `offset / SNAP_DIVISOR`.
/// Without this, coordinates of nested corridors grow by a few dozen bits
/// per nesting level.
pub const SNAP_DIVISOR: i64 = 4096;

fn snap(p: &Point, q: &Rational) -> Point {
    let r = |v: &Rational| (v / q).round() * q;
    Point::new(r(&p.x), r(&p.y))
}

/// Snap `p`, which lies on the segment `a -> a + dir`, along its dominant
/// axis so the result stays exactly on the segment. `None` if the snapped
/// point would leave it.
fn snap_along(p: &Point, a: &Point, dir: &Point, q: &Rational) -> Option<Point> {
    let r = |v: &Rational| (v / q).round() * q;
    let t = if dir.x.abs() >= dir.y.abs() {
        (r(&p.x) - &a.x) / &dir.x
    } else {
        (r(&p.y) - &a.y) / &dir.y
    };
    if t <= Rational::zero() || t >= Rational::from_integer(1.into()) {
        return None;
    }
    Some(a.add(&dir.scale(&t)))
}

/// Lines by height on the left side of the box, topmost first.
pub fn placement_order(sys: &PointLineSystem, bx: &BoxB) -> Vec<usize> {
    let (order, ties) = line_order_at(&sys.lines, &bx.xmin);
    assert!(ties.is_empty(), "two lines meet on the left side of the box");
    order
}

/// Smallest distance among anchors, polygon vertices and crossings, and from
/// each of them to the box, capped by the disk radius. Rounded down.
pub fn min_feature_gap(sys: &PointLineSystem, bx: &BoxB, disks: &[DiskSpec]) -> Rational {
    let mut pts: Vec<Point> = sys.crossings().into_iter().map(|(_, _, p)| p).collect();
    for d in disks {
        pts.extend(d.polygon.iter().cloned());
    }
    pts.sort_by(|a, b| a.lex_cmp(b));
    pts.dedup();
    let mut best2: Option<Rational> = disks.first().map(|d| &d.radius * &d.radius);
    for p in &pts {
        for v in [&p.x - &bx.xmin, &bx.xmax - &p.x, &p.y - &bx.ymin, &bx.ymax - &p.y] {
            let v2 = &v * &v;
            if best2.as_ref().is_none_or(|b| v2 < *b) {
                best2 = Some(v2);
            }
        }
    }
    for a in 0..pts.len() {
        for b in a + 1..pts.len() {
            let dx = &pts[b].x - &pts[a].x;
            let dx2 = &dx * &dx;
            if best2.as_ref().is_some_and(|m| dx2 >= *m) {
                break;
            }
            let d2 = pts[a].dist2(&pts[b]);
            if best2.as_ref().is_none_or(|m| d2 < *m) {
                best2 = Some(d2);
            }
        }
    }
    sqrt_floor(&best2.unwrap_or_else(|| int(1)))
}

type FBox = [f64; 4];

fn fbox(a: &Point, b: &Point) -> FBox {
    let (ax, ay, bx, by) = (to_f64(&a.x), to_f64(&a.y), to_f64(&b.x), to_f64(&b.y));
    let pad = |v: f64| v.abs() * 1e-9 + 1e-300;
    let (x0, x1) = (ax.min(bx), ax.max(bx));
    let (y0, y1) = (ay.min(by), ay.max(by));
    [x0 - pad(x0), x1 + pad(x1), y0 - pad(y0), y1 + pad(y1)]
}

fn fbox_overlap(a: &FBox, b: &FBox) -> bool {
    a[0] <= b[1] && b[0] <= a[1] && a[2] <= b[3] && b[2] <= a[3]
}

/// A placed red curve with segment boxes for quick rejection.
struct Placed {
    verts: Vec<Point>,
    fpts: Vec<(f64, f64)>,
    boxes: Vec<FBox>,
}

fn fpt(p: &Point) -> (f64, f64) {
    (to_f64(&p.x), to_f64(&p.y))
}

impl Placed {
    fn new(verts: Vec<Point>) -> Self {
        let boxes = verts.windows(2).map(|w| fbox(&w[0], &w[1])).collect();
        let fpts = verts.iter().map(fpt).collect();
        Placed { verts, fpts, boxes }
    }
}

/// Position along the guide: segment index, then parameter in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Pos {
    seg: usize,
    t: Rational,
}

impl Ord for Pos {
    fn cmp(&self, o: &Pos) -> std::cmp::Ordering {
        self.seg.cmp(&o.seg).then_with(|| self.t.compare(&o.t))
    }
}

impl PartialOrd for Pos {
    fn partial_cmp(&self, o: &Pos) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

/// The path a red curve follows when nothing is in the way.
pub struct Guide {
    pub verts: Vec<Point>,
    /// `(vertex index, point index)` of every anchor on the guide.
    pub anchors: Vec<(usize, usize)>,
    fpts: Vec<(f64, f64)>,
    boxes: Vec<FBox>,
}

impl Guide {
    fn pos_of(&self, seg: usize, p: &Point) -> Pos {
        let a = &self.verts[seg];
        let d = self.verts[seg + 1].sub(a);
        let t = p.sub(a).dot(&d) / d.dot(&d);
        if t == Rational::from_integer(1.into()) && seg + 2 < self.verts.len() {
            return Pos {
                seg: seg + 1,
                t: Rational::zero(),
            };
        }
        Pos { seg, t }
    }

    /// First crossing of segment `u -> w` with the guide strictly after
    /// `after`, nearest to `u`.
    fn first_hit(&self, u: &Point, w: &Point, after: &Pos) -> Result<Option<(Point, Pos)>, String> {
        let b = fbox(u, w);
        let (fu, fw) = (fpt(u), fpt(w));
        let s = Segment { a: u.clone(), b: w.clone() };
        let dir = w.sub(u);
        let mut best: Option<(Rational, Point, Pos)> = None;
        for g in after.seg..self.verts.len() - 1 {
            if !fbox_overlap(&b, &self.boxes[g]) || surely_apart(fu, fw, self.fpts[g], self.fpts[g + 1]) {
                continue;
            }
            let gs = Segment {
                a: self.verts[g].clone(),
                b: self.verts[g + 1].clone(),
            };
            match segment_intersect(&s, &gs) {
                Intersection::Empty => {}
                Intersection::Point(p) => {
                    let pos = self.pos_of(g, &p);
                    if pos > *after {
                        let key = p.sub(u).dot(&dir);
                        if best.as_ref().is_none_or(|(k, _, _)| key < *k) {
                            best = Some((key, p, pos));
                        }
                    }
                }
                Intersection::Overlap(..) => {
                    return Err("hugging path runs along the guide".into());
                }
            }
        }
        Ok(best.map(|(_, p, pos)| (p, pos)))
    }
}

/// Guide for line `i` at offset `d`.
pub fn build_guide(
    sys: &PointLineSystem,
    bx: &BoxB,
    disks: &[DiskSpec],
    i: usize,
    d: &Rational,
) -> Result<Guide, String> {
    let line = &sys.lines[i];
    let dirl = Point::new(int(1), line.slope.clone());
    let mut verts = vec![line.point_at(&bx.xmin)];
    let mut anchors = Vec::new();
    let mut on = sys.points_on(i);
    on.sort_by(|&a, &b| sys.points[a].x.cmp(&sys.points[b].x));
    for j in on {
        let disk = &disks[j];
        let p = &sys.points[j];
        let (pos, anchor) = disk
            .anchor_of(i)
            .ok_or_else(|| format!("point {j} has no anchor for line {i}"))?;
        let poly = &disk.polygon;
        let chain: Vec<Point> = if line.slope.is_positive() {
            poly[..=pos].to_vec()
        } else {
            let mut c = poly[pos..].to_vec();
            c.push(poly[0].clone());
            c
        };
        if chain.len() < 3 {
            return Err(format!("disk {j} has no vertex between anchor and bottom"));
        }
        let last = chain.len() - 1;
        let joins = (1..last).flat_map(|k| {
            join(
                &chain[k],
                &chain[k].sub(&chain[k - 1]),
                &chain[k + 1].sub(&chain[k]),
                Side::Right,
                d,
            )
        });
        if line.slope.is_positive() {
            let e0 = chain[1].sub(&chain[0]);
            let (a, _) = line_meet(&shift(&chain[0], &e0, Side::Right, d), &e0, p, &dirl)
                .ok_or("first polygon edge parallel to its line")?;
            if a.x >= p.x {
                return Err(format!("detour around disk {j} starts after the point"));
            }
            verts.push(a);
            verts.extend(joins);
            anchors.push((verts.len(), j));
            verts.push(anchor.clone());
        } else {
            anchors.push((verts.len(), j));
            verts.push(anchor.clone());
            verts.extend(joins);
            let el = chain[last].sub(&chain[last - 1]);
            let (b, _) = line_meet(&shift(&chain[last], &el, Side::Right, d), &el, p, &dirl)
                .ok_or("last polygon edge parallel to its line")?;
            if b.x <= p.x {
                return Err(format!("detour around disk {j} ends before the point"));
            }
            verts.push(b);
        }
    }
    verts.push(line.point_at(&bx.xmax));
    let boxes = verts.windows(2).map(|w| fbox(&w[0], &w[1])).collect();
    let fpts = verts.iter().map(fpt).collect();
    Ok(Guide {
        verts,
        anchors,
        fpts,
        boxes,
    })
}

struct Event {
    pos: Pos,
    curve: usize,
    seg: usize,
    point: Point,
}

fn guide_events(guide: &Guide, placed: &[Option<Placed>]) -> Result<Vec<Event>, String> {
    use rayon::prelude::*;
    let per_curve: Vec<Result<Vec<Event>, String>> = placed
        .par_iter()
        .enumerate()
        .filter_map(|(h, pc)| pc.as_ref().map(|pc| (h, pc)))
        .map(|(h, pc)| {
            let mut evs = Vec::new();
            for g in 0..guide.verts.len() - 1 {
                let gb = &guide.boxes[g];
                let gs = Segment {
                    a: guide.verts[g].clone(),
                    b: guide.verts[g + 1].clone(),
                };
                for (s, sb) in pc.boxes.iter().enumerate() {
                    if !fbox_overlap(gb, sb)
                        || surely_apart(guide.fpts[g], guide.fpts[g + 1], pc.fpts[s], pc.fpts[s + 1])
                    {
                        continue;
                    }
                    let ps = Segment {
                        a: pc.verts[s].clone(),
                        b: pc.verts[s + 1].clone(),
                    };
                    match segment_intersect(&gs, &ps) {
                        Intersection::Empty => {}
                        Intersection::Point(p) => {
                            if p == ps.a || p == ps.b {
                                return Err(format!("guide passes through a vertex of curve {h}"));
                            }
                            evs.push(Event {
                                pos: guide.pos_of(g, &p),
                                curve: h,
                                seg: s,
                                point: p,
                            });
                        }
                        Intersection::Overlap(..) => {
                            return Err(format!("guide overlaps curve {h}"));
                        }
                    }
                }
            }
            Ok(evs)
        })
        .collect();
    let mut all = Vec::new();
    for r in per_curve {
        all.extend(r?);
    }
    all.sort_by(|a, b| a.pos.cmp(&b.pos));
    Ok(all)
}

/// Vertex `w` of the walk that starts at `x` on segment `s`, runs forward to
/// the end of `vs` and then back to its start.
fn walk_vertex<'a>(vs: &'a [Point], s: usize, x: &'a Point, w: usize) -> &'a Point {
    let n = vs.len();
    let fwd = n - 1 - s;
    if w == 0 {
        x
    } else if w <= fwd {
        &vs[s + w]
    } else {
        &vs[n - 1 - (w - fwd)]
    }
}

/// Hug `vs` from the crossing `x` on its segment `s`, starting on the side of
/// `prev`. Pushes the path onto `out` and returns where it rejoins the guide.
#[allow(clippy::too_many_arguments)]
fn hug(
    guide: &Guide,
    vs: &[Point],
    s: usize,
    x: &Point,
    at: &Pos,
    from: &Pos,
    d: &Rational,
    limit: &Limit,
    out: &mut Vec<Point>,
) -> Result<Option<Pos>, String> {
    let prev = out.last().expect("path is never empty").clone();
    let side = match orient(&vs[s], &vs[s + 1], &prev) {
        Sign::Positive => Side::Left,
        Sign::Negative => Side::Right,
        Sign::Zero => return Err("approach point lies on the hugged segment".into()),
    };
    let sdir = vs[s + 1].sub(&vs[s]);
    let g = at.seg;
    let gdir = guide.verts[g + 1].sub(&guide.verts[g]);
    let (e, _) = line_meet(&shift(x, &sdir, side, d), &sdir, &guide.verts[g], &gdir)
        .ok_or("guide parallel to the hugged segment")?;
    let q = d / int(SNAP_DIVISOR);
    let e = snap_along(&e, &guide.verts[g], &gdir, &q).unwrap_or(e);
    let epos = guide.pos_of(g, &e);
    if epos <= *from || epos >= *at {
        return Err("no room to enter the hugging corridor".into());
    }
    out.push(e.clone());
    let n = vs.len();
    let wl = (n - 1 - s) + (n - 1);
    let mut last = e;
    for w in 1..=wl {
        let v = walk_vertex(vs, s, x, w);
        let inc = v.sub(walk_vertex(vs, s, x, w - 1));
        let pts = if w < wl {
            join(v, &inc, &walk_vertex(vs, s, x, w + 1).sub(v), side, d)
        } else {
            vec![shift(v, &inc, side, d)]
        };
        for p in pts {
            let p = snap(&p, &q);
            if p == last {
                continue;
            }
            if let Some((cp, cpos)) = guide.first_hit(&last, &p, at)? {
                out.push(cp);
                return Ok(Some(cpos));
            }
            out.push(p.clone());
            last = p;
            if out.len().is_multiple_of(256) && limit.hit(out.len()) {
                return Ok(None);
            }
        }
    }
    Err("hugging path never rejoined the guide".into())
}

/// Vertex room and deadline for the curve being routed.
struct Limit {
    room: usize,
    deadline: Option<Instant>,
}

impl Limit {
    fn hit(&self, vertices: usize) -> bool {
        vertices > self.room || self.deadline.is_some_and(|t| Instant::now() >= t)
    }
}

type Routed = (Vec<Point>, Vec<(usize, Point)>);

/// Route one curve against the curves placed so far; `None` when the limit
/// is hit first.
fn route_one(guide: &Guide, placed: &[Option<Placed>], d: &Rational, limit: &Limit) -> Result<Option<Routed>, String> {
    let events = guide_events(guide, placed)?;
    let mut out = vec![guide.verts[0].clone()];
    let mut touched = Vec::new();
    let mut cur = Pos {
        seg: 0,
        t: Rational::zero(),
    };
    let mut next = 0;
    let last_vertex = guide.verts.len() - 1;
    let emit_to = |out: &mut Vec<Point>, touched: &mut Vec<(usize, Point)>, from: usize, to: usize| {
        for v in from..=to {
            out.push(guide.verts[v].clone());
            if let Some(&(_, j)) = guide.anchors.iter().find(|(k, _)| *k == v) {
                touched.push((j, guide.verts[v].clone()));
            }
        }
    };
    loop {
        while next < events.len() && events[next].pos <= cur {
            next += 1;
        }
        if next == events.len() {
            emit_to(&mut out, &mut touched, cur.seg + 1, last_vertex);
            break;
        }
        let ev = &events[next];
        if ev.pos.seg > cur.seg {
            emit_to(&mut out, &mut touched, cur.seg + 1, ev.pos.seg);
        }
        let from = if ev.pos.seg > cur.seg {
            Pos {
                seg: ev.pos.seg,
                t: Rational::zero(),
            }
        } else {
            cur.clone()
        };
        let vs = &placed[ev.curve].as_ref().expect("event on a placed curve").verts;
        match hug(guide, vs, ev.seg, &ev.point, &ev.pos, &from, d, limit, &mut out)
            .map_err(|m| format!("{m} (around red curve {})", ev.curve))?
        {
            Some(pos) if !limit.hit(out.len()) => cur = pos,
            _ => return Ok(None),
        }
    }
    out.dedup();
    Ok(Some((out, touched)))
}

/// Red curve `i` gets id `i`; its declared tangencies name blue ids
/// `lines + j`.
pub fn synth_red_curves(
    sys: &PointLineSystem,
    bx: &BoxB,
    disks: &[DiskSpec],
    params: &RoutingParams,
    budget: &Budget,
) -> Result<Vec<Curve>, SynthError> {
    let n = sys.lines.len();
    let mut placed: Vec<Option<Placed>> = (0..n).map(|_| None).collect();
    let mut curves: Vec<Option<Curve>> = (0..n).map(|_| None).collect();
    let mut used = 0usize;
    for (done, i) in placement_order(sys, bx).into_iter().enumerate() {
        let d = &params.per_curve_offset[i];
        let fail = |detail: String| SynthError::Routing { curve: i, detail };
        let guide = build_guide(sys, bx, disks, i, d).map_err(fail)?;
        let limit = Limit {
            room: budget.max_red_vertices.map_or(usize::MAX, |m| m.saturating_sub(used)),
            deadline: budget.deadline,
        };
        let Some((verts, touched)) = route_one(&guide, &placed, d, &limit).map_err(fail)? else {
            return Err(SynthError::Budget {
                placed: done,
                total: n,
                vertices: used,
            });
        };
        used += verts.len();
        let mut expected = sys.points_on(i);
        let mut got: Vec<usize> = touched.iter().map(|(j, _)| *j).collect();
        expected.sort_unstable();
        got.sort_unstable();
        if expected != got {
            return Err(fail(format!("touched points {got:?}, expected {expected:?}")));
        }
        let polyline = Polyline::new(verts.clone()).map_err(|e| fail(e.to_string()))?;
        curves[i] = Some(Curve {
            id: i,
            color: Color::Red,
            source: i,
            polyline,
            declared_tangencies: touched.into_iter().map(|(j, p)| (n + j, p)).collect(),
        });
        placed[i] = Some(Placed::new(verts));
    }
    Ok(curves.into_iter().map(|c| c.expect("every line placed")).collect())
}
