//! Deterministic SVG figures of curve families.

use std::fmt::Write;

use tangency_lab::rational::to_f64;
use tangency_lab::synthesis::{Color, CurveFamily};
use tangency_lab::verifier::TangencyReport;

const RED: &str = "#c0392b";
const BLUE: &str = "#2471a3";

/// Six decimals; negative zero printed as zero.
fn num(v: f64) -> String {
    let s = format!("{:.6}", v);
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.000000".into()
    } else {
        s
    }
}

/// Curves as paths, tangencies as circles, strip sides as lines. The y axis
/// points up as in the plane.
pub fn render_svg(family: &CurveFamily, report: &TangencyReport) -> String {
    let mut xs = vec![to_f64(&family.bbox.xmin), to_f64(&family.bbox.xmax)];
    let mut ys = vec![to_f64(&family.bbox.ymin), to_f64(&family.bbox.ymax)];
    for c in &family.curves {
        for v in &c.polyline.vertices {
            xs.push(to_f64(&v.x));
            ys.push(to_f64(&v.y));
        }
    }
    let fold = |v: &[f64]| v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
    let (x0, x1) = fold(&xs);
    let (y0, y1) = fold(&ys);
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let pad = span * 0.02;
    let stroke = span * 0.002;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        num(x0 - pad),
        num(-y1 - pad),
        num(x1 - x0 + 2.0 * pad),
        num(y1 - y0 + 2.0 * pad)
    )
    .unwrap();
    if let (Some((l, r)), true) = (&family.strip, family.grounded) {
        for x in [to_f64(l), to_f64(r)] {
            writeln!(
                out,
                r##"<line x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="#7f8c8d" stroke-width="{}" stroke-dasharray="{}"/>"##,
                num(-y1 - pad),
                num(-y0 + pad),
                num(stroke),
                num(stroke * 4.0),
                x = num(x),
            )
            .unwrap();
        }
    }
    for c in &family.curves {
        let color = if c.color == Color::Red { RED } else { BLUE };
        let mut d = String::new();
        for (i, v) in c.polyline.vertices.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            write!(d, "{cmd}{} {} ", num(to_f64(&v.x)), num(-to_f64(&v.y))).unwrap();
        }
        writeln!(
            out,
            r#"<path id="curve-{}" d="{}" fill="none" stroke="{color}" stroke-width="{}"/>"#,
            c.id,
            d.trim_end(),
            num(stroke)
        )
        .unwrap();
    }
    for (_, _, p) in &report.tangent_pairs {
        writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{}" fill="black"/>"#,
            num(to_f64(&p.x)),
            num(-to_f64(&p.y)),
            num(stroke * 3.0)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}
