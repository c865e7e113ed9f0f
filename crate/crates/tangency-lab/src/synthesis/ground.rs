//! The doubly-grounded variant: red curves start on the left side of a
//! vertical strip, blue curves end on its right side.

use super::{Color, CurveFamily};
use crate::{int, Point, Polyline, Rational};

/// Room between the furthest red excursion and the right side of the strip.
pub const STRIP_MARGIN: i64 = 1;

/// Extend every blue stem above the box and then right to the strip's right
/// side. The rightmost stem turns lowest, so the L-paths nest.
pub fn to_doubly_grounded(family: &CurveFamily) -> CurveFamily {
    let bx = &family.bbox;
    let mut reach = bx.xmax.clone();
    for c in family.of_color(Color::Red) {
        for v in &c.polyline.vertices {
            if v.x > reach {
                reach = v.x.clone();
            }
        }
    }
    let right_x = reach + int(STRIP_MARGIN);
    let mut blues: Vec<usize> = family
        .curves
        .iter()
        .filter(|c| c.color == Color::Blue)
        .map(|c| c.id)
        .collect();
    blues.sort_by(|&a, &b| {
        let xa = &family.curves[a].polyline.last().x;
        let xb = &family.curves[b].polyline.last().x;
        xb.cmp(xa)
    });
    let mut out = family.clone();
    for (rank, &id) in blues.iter().enumerate() {
        let c = &mut out.curves[id];
        let top = c.polyline.last().clone();
        let h: Rational = &bx.ymax + int(rank as i64 + 1);
        let mut vs = c.polyline.vertices.clone();
        let n = vs.len();
        vs[n - 1] = Point::new(top.x.clone(), h.clone());
        vs.push(Point::new(right_x.clone(), h));
        c.polyline = Polyline::new(vs).expect("extension keeps the polyline valid");
    }
    out.strip = Some((bx.xmin.clone(), right_x));
    out.grounded = true;
    out
}
