//! Turn a point-line system into red and blue curves whose tangencies realize
//! every incidence.
//!
//! Each point becomes a small convex polygon approximating a circle with a
//! vertical stem to the top of the box (blue). Each line becomes a red curve
//! that follows the line, touches the polygons of its points at rational
//! anchors, and detours around earlier red curves by hugging them out past
//! the right side of the box and back.

pub mod blue;
pub mod family;
pub mod ground;
pub mod offset;
pub mod red;

use std::time::Instant;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use blue::{synth_blue_curves, DiskSpec};
pub use family::{BoxB, Color, Curve, CurveFamily, FamilyParseError};
pub use ground::to_doubly_grounded;
pub use red::{synth_red_curves, RoutingParams};

use crate::incidence::PointLineSystem;
use crate::{int, BigInt, Point, Rational};

/// Everything produced for one system.
#[derive(Debug, Clone)]
pub struct Synthesis {
    pub family: CurveFamily,
    pub disks: Vec<DiskSpec>,
    pub radius: Rational,
    pub params: RoutingParams,
}

/// How often routing retries with a smaller base offset.
pub const ROUTING_ATTEMPTS: usize = 3;

/// Limits on red routing. Vertex counts grow very fast with `k`, so callers
/// that must finish use these to stop early with [`SynthError::Budget`].
#[derive(Debug, Clone, Copy, Default)]
pub struct Budget {
    /// Total vertices over all red curves.
    pub max_red_vertices: Option<usize>,
    pub deadline: Option<Instant>,
}

/// [`synthesize_within`] without limits.
pub fn synthesize(sys: &PointLineSystem) -> Result<Synthesis, SynthError> {
    synthesize_within(sys, &Budget::default())
}

/// Box, disks, blue curves and red curves for a system in general position.
/// Routing failures are retried with the base offset divided by 4.
pub fn synthesize_within(sys: &PointLineSystem, budget: &Budget) -> Result<Synthesis, SynthError> {
    let bx = compute_box(sys);
    let radius = choose_disk_radius(sys, &bx)?;
    let (blue, disks) = synth_blue_curves(sys, &bx, &radius)?;
    let mut params = RoutingParams::new(sys, &bx, &disks);
    let mut attempt = 1;
    let red = loop {
        match synth_red_curves(sys, &bx, &disks, &params, budget) {
            Ok(red) => break red,
            Err(SynthError::Routing { .. }) if attempt < ROUTING_ATTEMPTS => {
                params = params.shrunk(sys, &bx, 4);
                attempt += 1;
            }
            Err(e) => return Err(e),
        }
    };
    let mut curves = red;
    curves.extend(blue);
    Ok(Synthesis {
        family: CurveFamily {
            curves,
            bbox: bx,
            strip: None,
            grounded: false,
        },
        disks,
        radius,
        params,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthError {
    #[error("points {0} and {1} coincide")]
    CoincidentPoints(usize, usize),
    #[error("lines {0} and {1} produce the same anchor on disk {2}")]
    AnchorCollision(usize, usize, usize),
    #[error("anchors of disk {0} are not in counterclockwise order")]
    AnchorOrder(usize),
    #[error("routing red curve {curve}: {detail}")]
    Routing { curve: usize, detail: String },
    #[error("system has no points")]
    Empty,
    #[error("budget exhausted with {placed} of {total} red curves placed ({vertices} red vertices)")]
    Budget { placed: usize, total: usize, vertices: usize },
}

/// Extra room between the outermost feature and the box.
pub const BOX_MARGIN: i64 = 1;

/// Box enclosing every point and crossing with margin 1, tall enough that
/// every line enters through the left side and leaves through the right.
pub fn compute_box(sys: &PointLineSystem) -> BoxB {
    let crossings: Vec<Point> = sys.crossings().into_iter().map(|(_, _, p)| p).collect();
    let margin = int(BOX_MARGIN);
    let mut xs = sys.points.iter().chain(crossings.iter()).map(|p| &p.x);
    let first = xs.next().cloned().unwrap_or_else(Rational::zero);
    let (mut x0, mut x1) = (first.clone(), first);
    for x in xs {
        if *x < x0 {
            x0 = x.clone();
        }
        if *x > x1 {
            x1 = x.clone();
        }
    }
    let xmin = &x0 - &margin;
    let xmax = &x1 + &margin;
    let mut ys: Vec<Rational> = sys.points.iter().chain(crossings.iter()).map(|p| p.y.clone()).collect();
    for l in &sys.lines {
        ys.push(l.y_at(&xmin));
        ys.push(l.y_at(&xmax));
    }
    let ymin = ys.iter().min().cloned().unwrap_or_else(Rational::zero) - &margin;
    let ymax = ys.iter().max().cloned().unwrap_or_else(Rational::zero) + &margin;
    BoxB { xmin, xmax, ymin, ymax }
}

/// Rational lower bound for `sqrt(v)`.
///
/// Exact when `v` is the square of a rational; otherwise within a relative
/// error of about `2^-48`.
pub fn sqrt_floor(v: &Rational) -> Rational {
    assert!(!v.is_negative(), "square root of a negative value");
    if v.is_zero() {
        return Rational::zero();
    }
    let (n, d) = (v.numer(), v.denom());
    let nd: BigInt = n * d;
    let s = nd.sqrt();
    if &s * &s == nd {
        return Rational::new(s, d.clone());
    }
    let shift = 48u32;
    let scaled: BigInt = nd << (2 * shift as usize);
    let s = scaled.sqrt();
    Rational::new(s, d.clone() << shift as usize)
}

/// Largest `2^-t` grid value not above `v`, coarse enough to keep at least
/// 15/16 of `v`. Exact if `v` already lies on that grid.
fn dyadic_floor(v: &Rational) -> Rational {
    let mut scale = Rational::one();
    while v * &scale < int(16) {
        scale *= int(2);
    }
    let scaled = v * &scale;
    let fl = scaled.floor();
    if fl == scaled {
        return v.clone();
    }
    fl / scale
}

/// Radius such that the disk `center = p + (0, r)` of every point keeps clear
/// of every other point, crossing, non-incident line and the box, and its
/// stem clears every other disk.
///
/// The binding bound is halved; irrational bounds are first rounded down.
pub fn choose_disk_radius(sys: &PointLineSystem, bx: &BoxB) -> Result<Rational, SynthError> {
    if sys.points.is_empty() {
        return Err(SynthError::Empty);
    }
    let crossings = sys.crossings();
    let n = sys.points.len();
    // Squared bounds on r, each as "r^2 < value".
    let mut best2: Option<Rational> = None;
    let mut take2 = |v: Rational| {
        if best2.as_ref().is_none_or(|b| v < *b) {
            best2 = Some(v);
        }
    };
    let four = int(4);
    let sixteen = int(16);
    let mut by_x: Vec<usize> = (0..n).collect();
    by_x.sort_by(|&a, &b| sys.points[a].x.cmp(&sys.points[b].x));
    for w in 0..n {
        for v in w + 1..n {
            let (a, b) = (by_x[w], by_x[v]);
            let pa = &sys.points[a];
            let pb = &sys.points[b];
            if pa == pb {
                return Err(SynthError::CoincidentPoints(a.min(b), a.max(b)));
            }
            let dx = &pb.x - &pa.x;
            // (a) disks disjoint
            take2(pa.dist2(pb) / &sixteen);
            // stems clear of other disks
            if !dx.is_zero() {
                take2(&dx * &dx / &four);
            }
        }
    }
    for (j, p) in sys.points.iter().enumerate() {
        let through = sys.lines_through(j);
        // (b) non-incident lines
        for (i, l) in sys.lines.iter().enumerate() {
            if through.binary_search(&i).is_err() {
                take2(l.dist2(p) / &four);
            }
        }
        // (d) foreign crossings
        for (_, _, c) in &crossings {
            if c != p {
                take2(p.dist2(c) / &four);
            }
        }
        // (c) box; the disk spans [x - r, x + r] x [y, y + 2r]
        let lin = [
            &p.x - &bx.xmin,
            &bx.xmax - &p.x,
            (&bx.ymax - &p.y) / int(2),
            &p.y - &bx.ymin,
        ];
        for v in lin {
            take2(&v * &v);
        }
    }
    let bound = sqrt_floor(&best2.expect("at least one bound"));
    Ok(dyadic_floor(&(bound / int(2))))
}
