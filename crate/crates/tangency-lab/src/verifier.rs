//! Independent certification of curve families.
//!
//! Everything here is recomputed from vertex coordinates alone. Declared
//! tangencies recorded by synthesis are never consulted.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{orient_h, segments_meet, HPoint};
use crate::filter::surely_apart;
use crate::sweep::{first_conflict, SweepSeg};
use crate::geom::{orient, segment_intersect, Intersection, Scalar};
use crate::rational::{point_from_text, point_to_text, to_f64};
use crate::synthesis::family::{Color, CurveFamily};
use crate::{Point, Polyline, Rational, Segment, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    Crossing,
    Touching,
    Overlap,
    EndpointContact,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionEvent {
    pub curve_a: usize,
    pub curve_b: usize,
    /// For overlaps, the lexicographically smaller end of the shared piece.
    pub point: Point,
    pub kind: EventKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("curve {curve} is not simple: segments {seg_a} and {seg_b} meet at ({x}, {y})")]
    NonSimple {
        curve: usize,
        seg_a: usize,
        seg_b: usize,
        x: String,
        y: String,
    },
}

struct Prepared {
    hpts: Vec<Vec<HPoint>>,
    fpts: Vec<Vec<(f64, f64)>>,
    /// `(curve, segment, [xmin, xmax, ymin, ymax])`, outward-rounded floats.
    segs: Vec<(u32, u32, [f64; 4])>,
}

fn prepare(polys: &[&Polyline]) -> Prepared {
    let hpts: Vec<Vec<HPoint>> = polys
        .par_iter()
        .map(|p| p.vertices.iter().map(HPoint::from_point).collect())
        .collect();
    let fpts: Vec<Vec<(f64, f64)>> = polys
        .par_iter()
        .map(|p| {
            p.vertices
                .iter()
                .map(|v| (to_f64(&v.x), to_f64(&v.y)))
                .collect()
        })
        .collect();
    let mut segs = Vec::new();
    for (ci, fp) in fpts.iter().enumerate() {
        for si in 0..fp.len().saturating_sub(1) {
            let (ax, ay) = fp[si];
            let (bx, by) = fp[si + 1];
            segs.push((
                ci as u32,
                si as u32,
                [
                    widen_down(ax.min(bx)),
                    widen_up(ax.max(bx)),
                    widen_down(ay.min(by)),
                    widen_up(ay.max(by)),
                ],
            ));
        }
    }
    Prepared { hpts, fpts, segs }
}

// Rounding from exact rationals to f64 is within a few ulps; pad generously.
fn widen_down(v: f64) -> f64 {
    v - v.abs() * 1e-9 - 1e-200
}

fn widen_up(v: f64) -> f64 {
    v + v.abs() * 1e-9 + 1e-200
}

fn boxes_overlap(a: &[f64; 4], b: &[f64; 4]) -> bool {
    a[0] <= b[1] && b[0] <= a[1] && a[2] <= b[3] && b[2] <= a[3]
}

/// Candidate segment pair that truly meets: `(curve_a, seg_a, curve_b, seg_b)`
/// with `(curve_a, seg_a) < (curve_b, seg_b)`.
type Hit = (u32, u32, u32, u32);

/// All meeting segment pairs, found with a uniform grid over float boxes and
/// confirmed exactly. `want(ca, cb)` filters curve pairs up front.
fn find_hits(prep: &Prepared, want: &(dyn Fn(u32, u32) -> bool + Sync)) -> Vec<Hit> {
    find_hits_against(prep, &|_| true, want)
}

/// Meeting pairs in which at least one segment belongs to a curve accepted by
/// `target`. Only target segments go into the grid; every segment probes it.
fn find_hits_against(
    prep: &Prepared,
    target: &(dyn Fn(u32) -> bool + Sync),
    want: &(dyn Fn(u32, u32) -> bool + Sync),
) -> Vec<Hit> {
    let segs = &prep.segs;
    let targets: Vec<u32> = (0..segs.len() as u32).filter(|&i| target(segs[i as usize].0)).collect();
    if targets.is_empty() || segs.len() < 2 {
        return Vec::new();
    }
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for &i in &targets {
        let b = &segs[i as usize].2;
        lo[0] = lo[0].min(b[0]);
        hi[0] = hi[0].max(b[1]);
        lo[1] = lo[1].min(b[2]);
        hi[1] = hi[1].max(b[3]);
    }
    let g = ((targets.len() as f64).sqrt() as usize).clamp(1, 1024);
    let span = [(hi[0] - lo[0]).max(1e-300), (hi[1] - lo[1]).max(1e-300)];
    let cell = |v: f64, axis: usize| -> usize {
        let t = ((v - lo[axis]) / span[axis] * g as f64).floor();
        (t.max(0.0) as usize).min(g - 1)
    };
    let mut grid: Vec<Vec<u32>> = vec![Vec::new(); g * g];
    for &i in &targets {
        let b = &segs[i as usize].2;
        for cx in cell(b[0], 0)..=cell(b[1], 0) {
            for cy in cell(b[2], 1)..=cell(b[3], 1) {
                grid[cx * g + cy].push(i);
            }
        }
    }
    let hp = &prep.hpts;
    let fp = &prep.fpts;
    (0..segs.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let (ca, sa, ba) = &segs[i];
            let mut out = Vec::new();
            if ba[1] < lo[0] || ba[0] > hi[0] || ba[3] < lo[1] || ba[2] > hi[1] {
                return out;
            }
            let i_target = target(*ca);
            for gx in cell(ba[0], 0)..=cell(ba[1], 0) {
                for gy in cell(ba[2], 1)..=cell(ba[3], 1) {
                    for &j in &grid[gx * g + gy] {
                        let j = j as usize;
                        // Pairs of two target segments are handled from the smaller one.
                        if j == i || (i_target && j < i) {
                            continue;
                        }
                        let (cb, sb, bb) = &segs[j];
                        if !boxes_overlap(ba, bb) || !want(*ca, *cb) {
                            continue;
                        }
                        // Test each pair in exactly one cell.
                        if cell(ba[0].max(bb[0]), 0) != gx || cell(ba[2].max(bb[2]), 1) != gy {
                            continue;
                        }
                        let (ca_, sa_, cb_, sb_) = (*ca as usize, *sa as usize, *cb as usize, *sb as usize);
                        if surely_apart(fp[ca_][sa_], fp[ca_][sa_ + 1], fp[cb_][sb_], fp[cb_][sb_ + 1]) {
                            continue;
                        }
                        if segments_meet(&hp[ca_][sa_], &hp[ca_][sa_ + 1], &hp[cb_][sb_], &hp[cb_][sb_ + 1]) {
                            let (x, y) = ((*ca, *sa), (*cb, *sb));
                            out.push(if x < y { (x.0, x.1, y.0, y.1) } else { (y.0, y.1, x.0, x.1) });
                        }
                    }
                }
            }
            out
        })
        .collect()
}

/// Whether the curves accepted by `pick` are pairwise disjoint and simple.
///
/// Runs a sweep over their segments; only consecutive segments of one curve
/// may share a point, and those must not fold back onto each other.
fn sweep_clean(prep: &Prepared, pick: &dyn Fn(u32) -> bool) -> bool {
    let mut owners: Vec<(u32, u32)> = Vec::new();
    let mut segs: Vec<SweepSeg> = Vec::new();
    for (ci, hp) in prep.hpts.iter().enumerate() {
        if !pick(ci as u32) {
            continue;
        }
        let fp = &prep.fpts[ci];
        for si in 0..hp.len().saturating_sub(1) {
            if si > 0 {
                let (a, b, c) = (&hp[si - 1], &hp[si], &hp[si + 1]);
                if orient_h(a, b, c) == Sign::Zero && !forward(a, b, c) {
                    return false;
                }
            }
            owners.push((ci as u32, si as u32));
            segs.push(SweepSeg::new(&hp[si], &hp[si + 1], fp[si], fp[si + 1]));
        }
    }
    let allowed = |i: usize, j: usize| {
        let (a, b) = (owners[i], owners[j]);
        a.0 == b.0 && a.1.abs_diff(b.1) == 1
    };
    first_conflict(&segs, &allowed).is_none()
}

/// For collinear `a, b, c`: whether `c` continues past `b` away from `a`.
fn forward(a: &HPoint, b: &HPoint, c: &HPoint) -> bool {
    let ux = &b.x * &a.w - &a.x * &b.w;
    let uy = &b.y * &a.w - &a.y * &b.w;
    let vx = &c.x * &b.w - &b.x * &c.w;
    let vy = &c.y * &b.w - &b.y * &c.w;
    (ux * vx + uy * vy).is_positive()
}

/// Where a point sits on a polyline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Locus {
    Vertex(usize),
    Inside(usize),
}

fn locate(poly: &Polyline, seg: usize, p: &Point) -> Locus {
    if poly.vertices[seg] == *p {
        Locus::Vertex(seg)
    } else if poly.vertices[seg + 1] == *p {
        Locus::Vertex(seg + 1)
    } else {
        Locus::Inside(seg)
    }
}

/// Far ends of the two branches leaving `p`; `None` if `p` is an endpoint.
fn branches(poly: &Polyline, at: Locus) -> Option<[&Point; 2]> {
    let v = &poly.vertices;
    match at {
        Locus::Vertex(i) if i == 0 || i + 1 == v.len() => None,
        Locus::Vertex(i) => Some([&v[i - 1], &v[i + 1]]),
        Locus::Inside(s) => Some([&v[s], &v[s + 1]]),
    }
}

/// 0 for directions `p -> q` in the upper half-plane (positive x-axis
/// included), 1 otherwise.
fn half(p: &Point, q: &Point) -> u8 {
    match q.y.compare(&p.y) {
        Ordering::Greater => 0,
        Ordering::Equal if q.x.compare(&p.x).is_gt() => 0,
        _ => 1,
    }
}

/// Angular order of the directions `p -> a` and `p -> b`, starting from the
/// positive x-axis.
fn angle_cmp(p: &Point, a: &Point, b: &Point) -> Ordering {
    half(p, a).cmp(&half(p, b)).then_with(|| match orient(p, a, b) {
        Sign::Positive => Ordering::Less,
        Sign::Negative => Ordering::Greater,
        Sign::Zero => Ordering::Equal,
    })
}

/// Crossing iff the four branches around `p` alternate between the curves.
fn classify(p: &Point, a: &[&Point; 2], b: &[&Point; 2]) -> EventKind {
    let mut dirs: Vec<(&Point, u8)> = vec![(a[0], 0), (a[1], 0), (b[0], 1), (b[1], 1)];
    dirs.sort_by(|x, y| angle_cmp(p, x.0, y.0));
    let c: Vec<u8> = dirs.iter().map(|d| d.1).collect();
    if c[0] != c[1] && c[1] != c[2] && c[2] != c[3] {
        EventKind::Crossing
    } else {
        EventKind::Touching
    }
}

fn overlap_of(poly_a: &Polyline, sa: usize, poly_b: &Polyline, sb: usize) -> Intersection<Rational> {
    segment_intersect(&poly_a.segment(sa), &poly_b.segment(sb))
}

fn non_simple(curve: usize, seg_a: usize, seg_b: usize, p: &Point) -> VerifyError {
    VerifyError::NonSimple {
        curve,
        seg_a,
        seg_b,
        x: crate::rational::to_text(&p.x),
        y: crate::rational::to_text(&p.y),
    }
}

/// An event together with a segment of each curve that contains its point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocatedEvent {
    pub event: IntersectionEvent,
    pub seg_a: usize,
    pub seg_b: usize,
}

fn events_for_pair(
    ia: usize,
    a: &Polyline,
    ib: usize,
    b: &Polyline,
    hits: &[(usize, usize)],
) -> Vec<IntersectionEvent> {
    located_for_pair(ia, a, ib, b, hits).into_iter().map(|l| l.event).collect()
}

/// Turn the meeting segment pairs of two distinct curves into events.
fn located_for_pair(
    ia: usize,
    a: &Polyline,
    ib: usize,
    b: &Polyline,
    hits: &[(usize, usize)],
) -> Vec<LocatedEvent> {
    let mut overlaps: Vec<(Point, Point, usize, usize)> = Vec::new();
    let mut points: Vec<(Point, usize, usize)> = Vec::new();
    for &(sa, sb) in hits {
        match overlap_of(a, sa, b, sb) {
            Intersection::Empty => {}
            Intersection::Point(p) => points.push((p, sa, sb)),
            Intersection::Overlap(p, q) => overlaps.push((p, q, sa, sb)),
        }
    }
    let mut events = Vec::new();
    overlaps.sort_by(|x, y| x.0.lex_cmp(&y.0).then_with(|| x.1.lex_cmp(&y.1)));
    overlaps.dedup_by(|x, y| x.0 == y.0 && x.1 == y.1);
    for (p, _, sa, sb) in &overlaps {
        events.push(LocatedEvent {
            event: IntersectionEvent {
                curve_a: ia,
                curve_b: ib,
                point: p.clone(),
                kind: EventKind::Overlap,
            },
            seg_a: *sa,
            seg_b: *sb,
        });
    }
    points.sort_by(|x, y| x.0.lex_cmp(&y.0));
    let mut i = 0;
    while i < points.len() {
        let mut j = i + 1;
        while j < points.len() && points[j].0 == points[i].0 {
            j += 1;
        }
        let p = &points[i].0;
        let covered = overlaps.iter().any(|(s, t, _, _)| {
            Segment { a: s.clone(), b: t.clone() }.contains(p)
        });
        if !covered {
            let (_, sa, sb) = &points[i];
            let la = locate(a, *sa, p);
            let lb = locate(b, *sb, p);
            let kind = match (branches(a, la), branches(b, lb)) {
                (Some(ba), Some(bb)) => classify(p, &ba, &bb),
                _ => EventKind::EndpointContact,
            };
            events.push(LocatedEvent {
                event: IntersectionEvent {
                    curve_a: ia,
                    curve_b: ib,
                    point: p.clone(),
                    kind,
                },
                seg_a: *sa,
                seg_b: *sb,
            });
        }
        i = j;
    }
    events
}

/// Self-intersections of single curves among the hits, if any.
fn check_simple(polys: &[&Polyline], hits: &[Hit]) -> Result<(), VerifyError> {
    for &(ca, sa, cb, sb) in hits {
        if ca != cb {
            continue;
        }
        let poly = polys[ca as usize];
        let (sa, sb) = (sa as usize, sb as usize);
        let inter = overlap_of(poly, sa, poly, sb);
        let adjacent = sb == sa + 1;
        match inter {
            Intersection::Empty => {}
            Intersection::Point(p) if adjacent && p == poly.vertices[sb] => {}
            Intersection::Point(p) | Intersection::Overlap(p, _) => {
                return Err(non_simple(ca as usize, sa, sb, &p));
            }
        }
    }
    Ok(())
}

/// Every common point of two polylines, classified.
pub fn pair_intersections(a: &Polyline, b: &Polyline) -> Result<Vec<IntersectionEvent>, VerifyError> {
    let polys = [a, b];
    let prep = prepare(&polys);
    let hits = find_hits(&prep, &|_, _| true);
    check_simple(&polys, &hits)?;
    let cross: Vec<(usize, usize)> = hits
        .iter()
        .filter(|h| h.0 != h.2)
        .map(|h| (h.1 as usize, h.3 as usize))
        .collect();
    Ok(events_for_pair(0, a, 1, b, &cross))
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TangencyReport {
    /// `(red index, blue index, point)` by family index, sorted.
    pub tangent_pairs: Vec<(usize, usize, Point)>,
    /// Bichromatic pairs with at least one crossing.
    pub crossing_pair_count: usize,
    pub same_color_violations: Vec<IntersectionEvent>,
    pub overlap_violations: Vec<IntersectionEvent>,
    /// Number of common points per intersecting pair.
    pub pair_event_counts: Vec<(usize, usize, usize)>,
    pub total_tangencies: usize,
}

impl TangencyReport {
    pub fn violation_count(&self) -> usize {
        self.same_color_violations.len() + self.overlap_violations.len()
    }

    pub fn is_clean(&self) -> bool {
        self.violation_count() == 0
    }

    pub fn tangent_set(&self) -> std::collections::BTreeSet<(usize, usize)> {
        self.tangent_pairs.iter().map(|(a, b, _)| (*a, *b)).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ReportJson::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        let raw: ReportJson = serde_json::from_str(s)?;
        raw.into_report().map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct EventJson {
    curve_a: usize,
    curve_b: usize,
    point: [String; 2],
    kind: EventKind,
}

#[derive(Serialize, Deserialize)]
struct ReportJson {
    total_tangencies: usize,
    crossing_pair_count: usize,
    tangent_pairs: Vec<(usize, usize, [String; 2])>,
    same_color_violations: Vec<EventJson>,
    overlap_violations: Vec<EventJson>,
    pair_event_counts: Vec<(usize, usize, usize)>,
}

fn event_json(e: &IntersectionEvent) -> EventJson {
    EventJson {
        curve_a: e.curve_a,
        curve_b: e.curve_b,
        point: point_to_text(&e.point),
        kind: e.kind,
    }
}

fn event_from_json(e: &EventJson) -> Result<IntersectionEvent, String> {
    Ok(IntersectionEvent {
        curve_a: e.curve_a,
        curve_b: e.curve_b,
        point: point_from_text(&e.point).map_err(|x| x.to_string())?,
        kind: e.kind,
    })
}

impl From<&TangencyReport> for ReportJson {
    fn from(r: &TangencyReport) -> Self {
        ReportJson {
            total_tangencies: r.total_tangencies,
            crossing_pair_count: r.crossing_pair_count,
            tangent_pairs: r
                .tangent_pairs
                .iter()
                .map(|(a, b, p)| (*a, *b, point_to_text(p)))
                .collect(),
            same_color_violations: r.same_color_violations.iter().map(event_json).collect(),
            overlap_violations: r.overlap_violations.iter().map(event_json).collect(),
            pair_event_counts: r.pair_event_counts.clone(),
        }
    }
}

impl ReportJson {
    fn into_report(self) -> Result<TangencyReport, String> {
        Ok(TangencyReport {
            tangent_pairs: self
                .tangent_pairs
                .iter()
                .map(|(a, b, p)| Ok((*a, *b, point_from_text(p).map_err(|x| x.to_string())?)))
                .collect::<Result<_, String>>()?,
            crossing_pair_count: self.crossing_pair_count,
            same_color_violations: self
                .same_color_violations
                .iter()
                .map(event_from_json)
                .collect::<Result<_, _>>()?,
            overlap_violations: self
                .overlap_violations
                .iter()
                .map(event_from_json)
                .collect::<Result<_, _>>()?,
            pair_event_counts: self.pair_event_counts,
            total_tangencies: self.total_tangencies,
        })
    }
}

/// Events of every pair of distinct curves that meet, grouped by pair.
fn family_events(family: &CurveFamily) -> Result<Vec<((usize, usize), Vec<LocatedEvent>)>, VerifyError> {
    let polys: Vec<&Polyline> = family.curves.iter().map(|c| &c.polyline).collect();
    let prep = prepare(&polys);
    let red = |c: u32| family.curves[c as usize].color == Color::Red;
    // Red curves are long and nearly parallel in bundles; a sweep confirms
    // they are disjoint without testing every close pair. Only a failed sweep
    // pays for the full listing.
    let hits = if sweep_clean(&prep, &red) {
        find_hits_against(&prep, &|c| !red(c), &|_, _| true)
    } else {
        find_hits(&prep, &|_, _| true)
    };
    check_simple(&polys, &hits)?;

    let mut by_pair: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for &(ca, sa, cb, sb) in &hits {
        if ca != cb {
            by_pair
                .entry((ca as usize, cb as usize))
                .or_default()
                .push((sa as usize, sb as usize));
        }
    }
    let pairs: Vec<((usize, usize), Vec<(usize, usize)>)> = by_pair.into_iter().collect();
    Ok(pairs
        .par_iter()
        .map(|((a, b), hs)| ((*a, *b), located_for_pair(*a, polys[*a], *b, polys[*b], hs)))
        .filter(|(_, evs)| !evs.is_empty())
        .collect())
}

/// Every intersection event between distinct curves, with the segments
/// carrying it; pairs in ascending order.
pub fn located_events(family: &CurveFamily) -> Result<Vec<LocatedEvent>, VerifyError> {
    Ok(family_events(family)?.into_iter().flat_map(|(_, e)| e).collect())
}

/// Classify every intersection of every curve pair in the family.
pub fn tangency_report(family: &CurveFamily) -> Result<TangencyReport, VerifyError> {
    let per_pair = family_events(family)?;
    let mut report = TangencyReport::default();
    for ((a, b), located) in per_pair {
        let events: Vec<IntersectionEvent> = located.into_iter().map(|l| l.event).collect();
        report.pair_event_counts.push((a, b, events.len()));
        let ca = family.curves[a].color;
        let cb = family.curves[b].color;
        for e in &events {
            if e.kind == EventKind::Overlap {
                report.overlap_violations.push(e.clone());
            }
        }
        if ca == cb {
            report.same_color_violations.extend(events);
            continue;
        }
        if events.iter().any(|e| e.kind == EventKind::Crossing) {
            report.crossing_pair_count += 1;
        }
        if events.len() == 1 && events[0].kind == EventKind::Touching {
            let (red, blue) = if ca == Color::Red { (a, b) } else { (b, a) };
            report.tangent_pairs.push((red, blue, events[0].point.clone()));
        }
    }
    report.tangent_pairs.sort_by_key(|x| (x.0, x.1));
    report.total_tangencies = report.tangent_pairs.len();
    Ok(report)
}

/// Same-color intersections only; cheaper than a full report when checking a
/// partially built family.
pub fn same_color_events(family: &CurveFamily) -> Result<Vec<IntersectionEvent>, VerifyError> {
    let polys: Vec<&Polyline> = family.curves.iter().map(|c| &c.polyline).collect();
    let colors: Vec<Color> = family.curves.iter().map(|c| c.color).collect();
    let prep = prepare(&polys);
    let hits = find_hits(&prep, &|a, b| colors[a as usize] == colors[b as usize]);
    check_simple(&polys, &hits)?;
    let mut by_pair: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new();
    for &(ca, sa, cb, sb) in &hits {
        if ca != cb {
            by_pair
                .entry((ca as usize, cb as usize))
                .or_default()
                .push((sa as usize, sb as usize));
        }
    }
    let mut keys: Vec<_> = by_pair.keys().copied().collect();
    keys.sort_unstable();
    Ok(keys
        .into_iter()
        .flat_map(|(a, b)| events_for_pair(a, polys[a], b, polys[b], &by_pair[&(a, b)]))
        .collect())
}

/// Strictly increasing vertex x-coordinates.
pub fn is_x_monotone(c: &Polyline) -> bool {
    c.vertices.windows(2).all(|w| w[0].x < w[1].x)
}

/// At a touching point of two x-monotone curves, whether `a` lies above `b`.
///
/// Decided from the rightward branches: `a` is above iff its branch turns
/// counterclockwise from `b`'s.
pub fn locally_above(a: &Polyline, b: &Polyline, p: &Point) -> Option<bool> {
    let ra = right_branch(a, p)?;
    let rb = right_branch(b, p)?;
    match Sign::of(&rb.cross(&ra)) {
        Sign::Positive => Some(true),
        Sign::Negative => Some(false),
        Sign::Zero => None,
    }
}

fn right_branch(c: &Polyline, p: &Point) -> Option<Point> {
    for s in c.segments() {
        if s.contains(p) {
            let far = if s.a.x > s.b.x { &s.a } else { &s.b };
            if far.x > p.x {
                return Some(far.sub(p));
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroundedViolation {
    NotGrounded,
    RedMissesLeft(usize),
    BlueMissesRight(usize),
    OutsideStrip(usize),
}

impl std::fmt::Display for GroundedViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroundedViolation::NotGrounded => write!(f, "family is not grounded"),
            GroundedViolation::RedMissesLeft(i) => {
                write!(f, "red curve {i} does not touch the left boundary")
            }
            GroundedViolation::BlueMissesRight(i) => {
                write!(f, "blue curve {i} does not touch the right boundary")
            }
            GroundedViolation::OutsideStrip(i) => write!(f, "curve {i} leaves the strip"),
        }
    }
}

/// Boundary contact and containment for a doubly-grounded family.
pub fn verify_grounded(family: &CurveFamily) -> Vec<GroundedViolation> {
    let (left, right) = match (&family.strip, family.grounded) {
        (Some(s), true) => s,
        _ => return vec![GroundedViolation::NotGrounded],
    };
    let mut out = Vec::new();
    for c in &family.curves {
        let vs = &c.polyline.vertices;
        match c.color {
            Color::Red if !vs.iter().any(|v| v.x == *left) => {
                out.push(GroundedViolation::RedMissesLeft(c.id))
            }
            Color::Blue if !vs.iter().any(|v| v.x == *right) => {
                out.push(GroundedViolation::BlueMissesRight(c.id))
            }
            _ => {}
        }
        if vs.iter().any(|v| v.x < *left || v.x > *right) {
            out.push(GroundedViolation::OutsideStrip(c.id));
        }
    }
    out
}
