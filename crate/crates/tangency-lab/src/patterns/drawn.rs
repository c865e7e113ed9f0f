//! Star redrawing of a red/blue family and the self-crossing checks on it.
//!
//! Each curve becomes a star centered at a base point on the curve, with one
//! arc per tangency. An arc is represented by the sub-polyline of the curve
//! between the base point and the tangency, so two arcs cross exactly where
//! their carrier pieces cross. Arcs of one curve never cross each other.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_traits::Zero;

use super::PatternError;
use crate::synthesis::{Color, CurveFamily};
use crate::verifier::{located_events, EventKind, TangencyReport};
use crate::{Point, Polyline, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseChoice {
    /// Red curves start where they touch the left side of the strip, blue
    /// curves where they touch the right side.
    Grounded,
    /// Every curve starts at its first vertex.
    CurveStart,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrawnVertex {
    /// Index of the curve in the family.
    pub curve: usize,
    pub color: Color,
    pub base: Point,
}

/// `red` and `blue` index `vertices`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrawnEdge {
    pub red: usize,
    pub blue: usize,
    pub point: Point,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartId {
    pub edge: usize,
    pub color: Color,
}

/// The piece of `curve` from its base point to the tangency of `edge`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgePart {
    pub curve: usize,
    pub polyline: Polyline,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrawnBipartiteGraph {
    /// One vertex per curve, in family order.
    pub vertices: Vec<DrawnVertex>,
    pub edges: Vec<DrawnEdge>,
    /// `[red part, blue part]` per edge.
    pub edge_parts: Vec<[EdgePart; 2]>,
    /// Crossing part pairs, smaller id first.
    pub crossing_relation: BTreeSet<(PartId, PartId)>,
    pub base_choice: BaseChoice,
}

impl DrawnBipartiteGraph {
    pub fn part(&self, id: PartId) -> &EdgePart {
        &self.edge_parts[id.edge][usize::from(id.color == Color::Blue)]
    }

    pub fn crosses(&self, a: PartId, b: PartId) -> bool {
        let key = if a < b { (a, b) } else { (b, a) };
        self.crossing_relation.contains(&key)
    }

    fn vertex_color(&self, v: usize) -> Color {
        self.vertices[v].color
    }

    /// Edges at each vertex as `(edge, other end)`.
    fn incidence(&self) -> Vec<Vec<(usize, usize)>> {
        let mut inc = vec![Vec::new(); self.vertices.len()];
        for (e, d) in self.edges.iter().enumerate() {
            inc[d.red].push((e, d.blue));
            inc[d.blue].push((e, d.red));
        }
        inc
    }
}

/// Position along a polyline: segment index and parameter in `[0, 1)`.
/// Vertices use parameter 0, including the last one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Pos {
    seg: usize,
    t: Rational,
}

fn pos_on(poly: &Polyline, seg: usize, p: &Point) -> Pos {
    let (a, b) = (&poly.vertices[seg], &poly.vertices[seg + 1]);
    if p == a {
        return Pos { seg, t: Rational::zero() };
    }
    if p == b {
        return Pos { seg: seg + 1, t: Rational::zero() };
    }
    let t = if a.x != b.x {
        (&p.x - &a.x) / (&b.x - &a.x)
    } else {
        (&p.y - &a.y) / (&b.y - &a.y)
    };
    Pos { seg, t }
}

fn vertex_pos(i: usize) -> Pos {
    Pos { seg: i, t: Rational::zero() }
}

/// Sub-polyline from `from` to `to`, oriented from `from`.
fn sub_polyline(poly: &Polyline, from: (&Pos, &Point), to: (&Pos, &Point)) -> Option<Polyline> {
    let (lo, hi, flip) = if from.0 <= to.0 { (from, to, false) } else { (to, from, true) };
    let mut vs = vec![lo.1.clone()];
    vs.extend(poly.vertices[lo.0.seg + 1..=hi.0.seg].iter().cloned());
    vs.push(hi.1.clone());
    vs.dedup();
    if flip {
        vs.reverse();
    }
    Polyline::new(vs).ok()
}

fn base_of(family: &CurveFamily, curve: usize, choice: BaseChoice) -> Result<usize, PatternError> {
    let c = &family.curves[curve];
    let vs = &c.polyline.vertices;
    match choice {
        BaseChoice::CurveStart => Ok(0),
        BaseChoice::Grounded => {
            let (left, right) = match (&family.strip, family.grounded) {
                (Some(s), true) => s,
                _ => return Err(PatternError::NotGrounded),
            };
            let side = if c.color == Color::Red { left } else { right };
            vs.iter().position(|v| v.x == *side).ok_or(PatternError::BaseNotOnCurve(curve))
        }
    }
}

/// Draw the tangency graph of a clean family as stars.
pub fn star_redraw(
    family: &CurveFamily,
    report: &TangencyReport,
    base_choice: BaseChoice,
) -> Result<DrawnBipartiteGraph, PatternError> {
    if !report.is_clean() {
        return Err(PatternError::UncleanReport);
    }
    let polys: Vec<&Polyline> = family.curves.iter().map(|c| &c.polyline).collect();
    let mut vertices = Vec::with_capacity(polys.len());
    let mut base_pos = Vec::with_capacity(polys.len());
    for (i, c) in family.curves.iter().enumerate() {
        let b = base_of(family, i, base_choice)?;
        vertices.push(DrawnVertex { curve: i, color: c.color, base: c.polyline.vertices[b].clone() });
        base_pos.push(vertex_pos(b));
    }

    let events = located_events(family)?;
    // Position of each tangency and crossing on both of its curves.
    let mut touch: BTreeMap<(usize, usize), (Pos, Pos)> = BTreeMap::new();
    let mut crossings: Vec<(usize, Pos, usize, Pos)> = Vec::new();
    for l in &events {
        let e = &l.event;
        if family.curves[e.curve_a].color == family.curves[e.curve_b].color {
            continue;
        }
        let pa = pos_on(polys[e.curve_a], l.seg_a, &e.point);
        let pb = pos_on(polys[e.curve_b], l.seg_b, &e.point);
        match e.kind {
            EventKind::Touching => {
                touch.insert((e.curve_a, e.curve_b), (pa, pb));
            }
            EventKind::Crossing => crossings.push((e.curve_a, pa, e.curve_b, pb)),
            _ => {}
        }
    }

    let mut edges = Vec::new();
    let mut parts = Vec::new();
    // Per curve: (edge, tangency position) of its arcs.
    let mut arcs: Vec<Vec<(usize, Pos)>> = vec![Vec::new(); polys.len()];
    for (red, blue, p) in &report.tangent_pairs {
        let (red, blue) = (*red, *blue);
        let key = (red.min(blue), red.max(blue));
        let (pa, pb) = touch.get(&key).cloned().ok_or(PatternError::DegeneratePart(red, blue))?;
        let (pr, pbl) = if red < blue { (pa, pb) } else { (pb, pa) };
        let e = edges.len();
        let mut pair = Vec::with_capacity(2);
        for (curve, at) in [(red, &pr), (blue, &pbl)] {
            let poly = sub_polyline(polys[curve], (&base_pos[curve], &vertices[curve].base), (at, p))
                .ok_or(PatternError::DegeneratePart(red, blue))?;
            pair.push(EdgePart { curve, polyline: poly });
            arcs[curve].push((e, at.clone()));
        }
        let blue_part = pair.pop().expect("two parts");
        let red_part = pair.pop().expect("two parts");
        parts.push([red_part, blue_part]);
        edges.push(DrawnEdge { red, blue, point: p.clone() });
    }

    let strictly_inside = |curve: usize, at: &Pos, end: &Pos| {
        let b = &base_pos[curve];
        let (lo, hi) = if b <= end { (b, end) } else { (end, b) };
        lo < at && at < hi
    };
    let mut crossing_relation = BTreeSet::new();
    for (ca, pa, cb, pb) in &crossings {
        let ia: Vec<usize> = arcs[*ca].iter().filter(|(_, x)| strictly_inside(*ca, pa, x)).map(|a| a.0).collect();
        let ib: Vec<usize> = arcs[*cb].iter().filter(|(_, x)| strictly_inside(*cb, pb, x)).map(|a| a.0).collect();
        for &ea in &ia {
            for &eb in &ib {
                let a = PartId { edge: ea, color: family.curves[*ca].color };
                let b = PartId { edge: eb, color: family.curves[*cb].color };
                crossing_relation.insert(if a < b { (a, b) } else { (b, a) });
            }
        }
    }

    Ok(DrawnBipartiteGraph { vertices, edges, edge_parts: parts, crossing_relation, base_choice })
}

/// A crossing pair of parts inside a checked subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimViolation {
    pub parts: (PartId, PartId),
    /// The edges of the walk or cycle, in order.
    pub edges: Vec<usize>,
    /// Whether the offending window visits some vertex twice.
    pub revisits: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClaimReport {
    pub two_edge_paths: Vec<ClaimViolation>,
    pub four_cycles: Vec<ClaimViolation>,
    pub five_part_windows: Vec<ClaimViolation>,
    /// How many subgraphs of each kind were examined.
    pub checked: [usize; 3],
}

impl ClaimReport {
    pub fn is_ok(&self) -> bool {
        self.two_edge_paths.is_empty() && self.four_cycles.is_empty() && self.five_part_windows.is_empty()
    }
}

/// Parts along a walk given as vertices `v0 .. vk` and edges `e1 .. ek`.
fn walk_parts(g: &DrawnBipartiteGraph, vs: &[usize], es: &[usize]) -> Vec<(PartId, usize)> {
    let mut out = Vec::with_capacity(2 * es.len());
    for (i, &e) in es.iter().enumerate() {
        for v in [vs[i], vs[i + 1]] {
            out.push((PartId { edge: e, color: g.vertex_color(v) }, v));
        }
    }
    out
}

fn first_crossing(g: &DrawnBipartiteGraph, parts: &[(PartId, usize)]) -> Option<(PartId, PartId)> {
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i + 1..] {
            if g.crosses(a.0, b.0) {
                return Some(if a.0 < b.0 { (a.0, b.0) } else { (b.0, a.0) });
            }
        }
    }
    None
}

/// Self-crossing 2-edge paths, 4-cycles and 5-part windows of walks with up
/// to three edges. Each crossing part pair is reported once per kind.
pub fn check_claim_p2(g: &DrawnBipartiteGraph) -> ClaimReport {
    let inc = g.incidence();
    let mut report = ClaimReport::default();
    let mut seen: [HashSet<(PartId, PartId)>; 3] = Default::default();
    let mut record = |kind: usize, parts: (PartId, PartId), edges: Vec<usize>, revisits: bool, r: &mut ClaimReport| {
        if seen[kind].insert(parts) {
            let v = ClaimViolation { parts, edges, revisits };
            match kind {
                0 => r.two_edge_paths.push(v),
                1 => r.four_cycles.push(v),
                _ => r.five_part_windows.push(v),
            }
        }
    };

    if !g.crossing_relation.is_empty() {
        // Two edges at a common middle vertex.
        for (v, es) in inc.iter().enumerate() {
            for (i, &(e1, u)) in es.iter().enumerate() {
                for &(e2, w) in &es[i + 1..] {
                    report.checked[0] += 1;
                    let parts = walk_parts(g, &[u, v, w], &[e1, e2]);
                    if let Some(x) = first_crossing(g, &parts) {
                        record(0, x, vec![e1, e2], false, &mut report);
                    }
                }
            }
        }
    } else {
        report.checked[0] = inc.iter().map(|es| es.len() * es.len().saturating_sub(1) / 2).sum();
    }

    // Four-cycles through red vertices r1 < r2 and two common neighbors.
    let reds: Vec<usize> = (0..g.vertices.len()).filter(|&v| g.vertex_color(v) == Color::Red).collect();
    for (i, &r1) in reds.iter().enumerate() {
        for &r2 in &reds[i + 1..] {
            let common: Vec<(usize, usize, usize)> = inc[r1]
                .iter()
                .filter_map(|&(e1, b)| inc[r2].iter().find(|&&(_, b2)| b2 == b).map(|&(e2, _)| (b, e1, e2)))
                .collect();
            for (x, &(b1, e11, e21)) in common.iter().enumerate() {
                for &(b2, e12, e22) in &common[x + 1..] {
                    report.checked[1] += 1;
                    let es = [e11, e21, e22, e12];
                    let parts = walk_parts(g, &[r1, b1, r2, b2, r1], &es);
                    if let Some(x) = first_crossing(g, &parts) {
                        record(1, x, es.to_vec(), false, &mut report);
                    }
                }
            }
        }
    }

    // Three-edge walks u -e1- x -e2- y -e3- w; windows of five parts.
    for (e2, d) in g.edges.iter().enumerate() {
        for (x, y) in [(d.red, d.blue), (d.blue, d.red)] {
            for &(e1, u) in &inc[x] {
                for &(e3, w) in &inc[y] {
                    report.checked[2] += 2;
                    if g.crossing_relation.is_empty() {
                        continue;
                    }
                    let vs = [u, x, y, w];
                    let parts = walk_parts(g, &vs, &[e1, e2, e3]);
                    for start in 0..2 {
                        let window = &parts[start..start + 5];
                        if let Some(p) = first_crossing(g, window) {
                            let mut verts: Vec<usize> = window.iter().map(|p| p.1).collect();
                            verts.dedup();
                            let distinct: HashSet<usize> = verts.iter().copied().collect();
                            record(2, p, vec![e1, e2, e3], distinct.len() < verts.len(), &mut report);
                        }
                    }
                }
            }
        }
    }
    report
}
