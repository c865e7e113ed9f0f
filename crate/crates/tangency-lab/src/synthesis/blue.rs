//! Blue curves: a convex polygon inscribed in a small circle above each point,
//! opened at the top and extended by a vertical stem.

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::{BoxB, Color, Curve, SynthError};
use crate::geom::line_second_circle_intersection;
use crate::incidence::PointLineSystem;
use crate::{frac, int, Point, Polyline, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiskSpec {
    pub point_index: usize,
    pub center: Point,
    pub radius: Rational,
    /// `(line_index, anchor)` for every incident line, by line index.
    pub anchors: Vec<(usize, Point)>,
    pub filler_vertices: Vec<Point>,
    /// Polygon vertices counterclockwise, starting at the bottom point.
    pub polygon: Vec<Point>,
    /// Position of each anchor (same order as `anchors`) in `polygon`.
    pub anchor_pos: Vec<usize>,
}

impl DiskSpec {
    /// The polygon vertex where the point itself sits.
    pub fn bottom(&self) -> &Point {
        &self.polygon[0]
    }

    pub fn anchor_of(&self, line: usize) -> Option<(usize, &Point)> {
        self.anchors
            .iter()
            .zip(&self.anchor_pos)
            .find(|((l, _), _)| *l == line)
            .map(|((_, p), &pos)| (pos, p))
    }
}

/// Auxiliary slopes for filler vertices. Consecutive vertices subtend at most
/// about 37 degrees, well under the 82 degrees that keeps every edge within
/// `r/4` of the circle.
fn filler_slopes() -> Vec<Rational> {
    let mut v = Vec::new();
    for (n, d) in [(1, 4), (1, 2), (1, 1), (2, 1), (4, 1), (8, 1)] {
        v.push(frac(n, d));
        v.push(frac(-n, d));
    }
    v
}

/// Angular key of a circle point given by its chord slope from the bottom:
/// positive slopes come first (ascending), then the top, then negative ones.
fn ccw_key(s: &Option<Rational>) -> (u8, Rational) {
    match s {
        Some(s) if s.is_positive() => (0, s.clone()),
        None => (1, Rational::zero()),
        Some(s) => (2, s.clone()),
    }
}

pub fn build_disk(sys: &PointLineSystem, j: usize, r: &Rational) -> Result<DiskSpec, SynthError> {
    let p = sys.points[j].clone();
    let center = Point::new(p.x.clone(), &p.y + r);
    let through = sys.lines_through(j);
    let mut anchors = Vec::with_capacity(through.len());
    for &i in &through {
        let q = line_second_circle_intersection(&center, r, &p, &sys.lines[i].slope)
            .map_err(|_| SynthError::AnchorCollision(i, i, j))?;
        if let Some(&(other, _)) = anchors.iter().find(|(_, a)| *a == q) {
            return Err(SynthError::AnchorCollision(other, i, j));
        }
        anchors.push((i, q));
    }
    let anchor_slopes: Vec<Rational> = through.iter().map(|&i| sys.lines[i].slope.clone()).collect();
    let mut slopes = filler_slopes();
    // A vertex strictly between the bottom and the nearest anchor on each
    // side, so every detour has an edge not lying on its own line.
    if let Some(s) = anchor_slopes.iter().filter(|s| s.is_positive()).min() {
        slopes.push(s / int(2));
    }
    if let Some(s) = anchor_slopes.iter().filter(|s| s.is_negative()).max() {
        slopes.push(s / int(2));
    }
    slopes.retain(|s| !anchor_slopes.contains(s));
    slopes.sort();
    slopes.dedup();

    let mut verts: Vec<(Option<Rational>, Point, Option<usize>)> = Vec::new();
    let mut fillers = Vec::new();
    for s in &slopes {
        let q = line_second_circle_intersection(&center, r, &p, s).expect("nonzero slope");
        fillers.push(q.clone());
        verts.push((Some(s.clone()), q, None));
    }
    let top = Point::new(p.x.clone(), &p.y + r * int(2));
    fillers.push(top.clone());
    verts.push((None, top, None));
    for (k, (_, q)) in anchors.iter().enumerate() {
        verts.push((Some(anchor_slopes[k].clone()), q.clone(), Some(k)));
    }
    verts.sort_by_key(|a| ccw_key(&a.0));

    let mut polygon = vec![p.clone()];
    let mut anchor_pos = vec![0; anchors.len()];
    for (_, q, a) in verts {
        if let Some(k) = a {
            anchor_pos[k] = polygon.len();
        }
        polygon.push(q);
    }
    if anchor_pos.windows(2).any(|w| w[0] >= w[1]) {
        return Err(SynthError::AnchorOrder(j));
    }
    Ok(DiskSpec {
        point_index: j,
        center,
        radius: r.clone(),
        anchors,
        filler_vertices: fillers,
        polygon,
        anchor_pos,
    })
}

/// The open polygon plus stem: starts at the vertex just before the top
/// (counterclockwise), runs clockwise around to the top vertex and then
/// straight up to the top side of the box.
pub fn blue_polyline(d: &DiskSpec, bx: &BoxB) -> Polyline {
    let poly = &d.polygon;
    let top_pos = poly
        .iter()
        .position(|q| q.x == d.center.x && q.y > d.center.y)
        .expect("top vertex present");
    let mut vs = Vec::with_capacity(poly.len() + 1);
    for k in (0..top_pos).rev() {
        vs.push(poly[k].clone());
    }
    for k in (top_pos..poly.len()).rev() {
        vs.push(poly[k].clone());
    }
    // The loop above ends at the top vertex.
    vs.push(Point::new(d.center.x.clone(), bx.ymax.clone()));
    Polyline::new(vs).expect("blue polyline is valid")
}

/// Blue curve `j` gets id `lines + j`; red curve `i` has id `i`.
pub fn synth_blue_curves(
    sys: &PointLineSystem,
    bx: &BoxB,
    r: &Rational,
) -> Result<(Vec<Curve>, Vec<DiskSpec>), SynthError> {
    let disks = (0..sys.points.len())
        .into_par_iter()
        .map(|j| build_disk(sys, j, r))
        .collect::<Result<Vec<_>, _>>()?;
    let n_lines = sys.lines.len();
    let curves = disks
        .iter()
        .map(|d| Curve {
            id: n_lines + d.point_index,
            color: Color::Blue,
            source: d.point_index,
            polyline: blue_polyline(d, bx),
            declared_tangencies: d.anchors.iter().map(|(i, q)| (*i, q.clone())).collect(),
        })
        .collect();
    Ok((curves, disks))
}
