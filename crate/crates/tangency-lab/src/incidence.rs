//! Grid point-line systems with `k^4` incidences, and the shear that puts
//! them in general position.

use std::cmp::Ordering;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{from_text, point_from_text, point_to_text, to_text, ParseRationalError};
use crate::{int, Line, Point, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IncidenceError {
    #[error("grid parameter k must be at least 1 (got {0})")]
    BadK(i64),
    #[error("shear parameter {m} maps points {a} and {b} to the same x-coordinate")]
    SharedX { m: i64, a: usize, b: usize },
    #[error("shear parameter must be positive (got {0})")]
    BadShear(i64),
    #[error(transparent)]
    Parse(#[from] ParseRationalError),
    #[error("incidence ({0}, {1}) refers to a missing line or point")]
    BadIndex(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointLineSystem {
    pub k: u32,
    pub points: Vec<Point>,
    pub lines: Vec<Line>,
    /// Sorted `(line_index, point_index)` pairs.
    pub incidences: Vec<(usize, usize)>,
}

impl PointLineSystem {
    /// Line indices through point `j`, ascending.
    pub fn lines_through(&self, j: usize) -> Vec<usize> {
        self.incidences
            .iter()
            .filter(|&&(_, p)| p == j)
            .map(|&(l, _)| l)
            .collect()
    }

    /// Point indices on line `i`, ascending.
    pub fn points_on(&self, i: usize) -> Vec<usize> {
        self.incidences
            .iter()
            .filter(|&&(l, _)| l == i)
            .map(|&(_, p)| p)
            .collect()
    }

    /// Every pairwise crossing of the lines, with the two indices.
    pub fn crossings(&self) -> Vec<(usize, usize, Point)> {
        let mut out = Vec::new();
        for i in 0..self.lines.len() {
            for j in i + 1..self.lines.len() {
                if let Some(p) = self.lines[i].meet(&self.lines[j]) {
                    out.push((i, j, p));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SystemJson::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, SystemParseError> {
        let raw: SystemJson = serde_json::from_str(s)?;
        Ok(raw.into_system()?)
    }
}

#[derive(Debug, Error)]
pub enum SystemParseError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Content(#[from] IncidenceError),
}

#[derive(Serialize, Deserialize)]
struct LineJson {
    slope: String,
    intercept: String,
}

#[derive(Serialize, Deserialize)]
struct SystemJson {
    k: u32,
    points: Vec<[String; 2]>,
    lines: Vec<LineJson>,
    incidences: Vec<[usize; 2]>,
}

impl From<&PointLineSystem> for SystemJson {
    fn from(s: &PointLineSystem) -> Self {
        SystemJson {
            k: s.k,
            points: s.points.iter().map(point_to_text).collect(),
            lines: s
                .lines
                .iter()
                .map(|l| LineJson {
                    slope: to_text(&l.slope),
                    intercept: to_text(&l.intercept),
                })
                .collect(),
            incidences: s.incidences.iter().map(|&(l, p)| [l, p]).collect(),
        }
    }
}

impl SystemJson {
    fn into_system(self) -> Result<PointLineSystem, IncidenceError> {
        let points = self
            .points
            .iter()
            .map(point_from_text)
            .collect::<Result<Vec<_>, _>>()?;
        let lines = self
            .lines
            .iter()
            .map(|l| Ok(Line::new(from_text(&l.slope)?, from_text(&l.intercept)?)))
            .collect::<Result<Vec<_>, ParseRationalError>>()?;
        let mut incidences = Vec::with_capacity(self.incidences.len());
        for [l, p] in self.incidences {
            if l >= lines.len() || p >= points.len() {
                return Err(IncidenceError::BadIndex(l, p));
            }
            incidences.push((l, p));
        }
        incidences.sort_unstable();
        Ok(PointLineSystem {
            k: self.k,
            points,
            lines,
            incidences,
        })
    }
}

/// Points `{1..k} x {1..2k^2}` and lines `y = mx + b`, `m in 1..k`, `b in 1..k^2`.
pub fn generate_grid_system(k: i64) -> Result<PointLineSystem, IncidenceError> {
    if k < 1 {
        return Err(IncidenceError::BadK(k));
    }
    let height = 2 * k * k;
    let mut points = Vec::with_capacity((k * height) as usize);
    for x in 1..=k {
        for y in 1..=height {
            points.push(Point::new(int(x), int(y)));
        }
    }
    let mut lines = Vec::with_capacity((k * k * k) as usize);
    let mut incidences = Vec::with_capacity((k * k * k * k) as usize);
    for m in 1..=k {
        for b in 1..=k * k {
            let li = lines.len();
            lines.push(Line::new(int(m), int(b)));
            for x in 1..=k {
                let y = m * x + b;
                incidences.push((li, ((x - 1) * height + (y - 1)) as usize));
            }
        }
    }
    incidences.sort_unstable();
    Ok(PointLineSystem {
        k: k as u32,
        points,
        lines,
        incidences,
    })
}

/// Smallest shear parameter that separates the grid columns.
pub fn default_shear(k: i64) -> i64 {
    2 * k * k + 1
}

/// Apply `(x, y) -> (Mx + y, y)`.
///
/// A line `y = mx + b` becomes `y = (m/(M+m)) x + bM/(M+m)`.
pub fn shear_normalize(sys: &PointLineSystem, m: i64) -> Result<PointLineSystem, IncidenceError> {
    if m < 1 {
        return Err(IncidenceError::BadShear(m));
    }
    let mm = int(m);
    let points: Vec<Point> = sys
        .points
        .iter()
        .map(|p| Point::new(mm.clone() * p.x.clone() + p.y.clone(), p.y.clone()))
        .collect();
    if let Some((a, b)) = first_shared_x(&points) {
        return Err(IncidenceError::SharedX { m, a, b });
    }
    let lines = sys
        .lines
        .iter()
        .map(|l| {
            let q = mm.clone() + l.slope.clone();
            Line::new(l.slope.clone() / q.clone(), l.intercept.clone() * mm.clone() / q)
        })
        .collect();
    Ok(PointLineSystem {
        k: sys.k,
        points,
        lines,
        incidences: sys.incidences.clone(),
    })
}

fn x_sorted(points: &[Point]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| points[a].x.cmp(&points[b].x).then(a.cmp(&b)));
    idx
}

fn first_shared_x(points: &[Point]) -> Option<(usize, usize)> {
    let idx = x_sorted(points);
    idx.windows(2)
        .find(|w| points[w[0]].x == points[w[1]].x)
        .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
}

/// Direct substitution over all point-line pairs; ignores the stored list.
pub fn count_incidences_bruteforce(sys: &PointLineSystem) -> u64 {
    sys.lines
        .par_iter()
        .map(|l| sys.points.iter().filter(|p| l.contains(p)).count() as u64)
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PositionViolation {
    HorizontalLine(usize),
    SharedX(usize, usize),
    DuplicatePoint(usize, usize),
    DuplicateLine(usize, usize),
    /// Two lines meet on the reference line, so their order there is a tie.
    MeetOnReference(usize, usize),
}

impl std::fmt::Display for PositionViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PositionViolation::HorizontalLine(i) => write!(f, "horizontal line at index {i}"),
            PositionViolation::SharedX(a, b) => {
                write!(f, "points {a} and {b} share an x-coordinate")
            }
            PositionViolation::DuplicatePoint(a, b) => write!(f, "points {a} and {b} coincide"),
            PositionViolation::DuplicateLine(a, b) => write!(f, "lines {a} and {b} coincide"),
            PositionViolation::MeetOnReference(a, b) => {
                write!(f, "lines {a} and {b} meet on the reference line")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionReport {
    pub violations: Vec<PositionViolation>,
    /// Vertical reference line used for the line order.
    pub reference_x: Rational,
    /// Line indices by height on the reference line, topmost first.
    pub line_order: Vec<usize>,
}

impl PositionReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// One unit left of every point and every line crossing.
pub fn reference_x(sys: &PointLineSystem) -> Rational {
    let mut xmin: Option<Rational> = None;
    let mut take = |x: &Rational| {
        if xmin.as_ref().is_none_or(|m| x < m) {
            xmin = Some(x.clone());
        }
    };
    for p in &sys.points {
        take(&p.x);
    }
    for (_, _, c) in sys.crossings() {
        take(&c.x);
    }
    xmin.unwrap_or_else(Rational::zero) - Rational::one()
}

/// Lines ordered by their height at `x`, topmost first; ties reported.
pub fn line_order_at(lines: &[Line], x: &Rational) -> (Vec<usize>, Vec<(usize, usize)>) {
    let ys: Vec<Rational> = lines.iter().map(|l| l.y_at(x)).collect();
    let mut order: Vec<usize> = (0..lines.len()).collect();
    order.sort_by(|&a, &b| match ys[b].cmp(&ys[a]) {
        Ordering::Equal => a.cmp(&b),
        o => o,
    });
    let ties = order
        .windows(2)
        .filter(|w| ys[w[0]] == ys[w[1]])
        .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
        .collect();
    (order, ties)
}

/// General-position audit; problems are returned as data.
pub fn verify_general_position(sys: &PointLineSystem) -> PositionReport {
    let mut violations = Vec::new();
    for (i, l) in sys.lines.iter().enumerate() {
        if l.slope.is_zero() {
            violations.push(PositionViolation::HorizontalLine(i));
        }
    }
    let idx = x_sorted(&sys.points);
    for w in idx.windows(2) {
        let (a, b) = (w[0].min(w[1]), w[0].max(w[1]));
        if sys.points[a] == sys.points[b] {
            violations.push(PositionViolation::DuplicatePoint(a, b));
        } else if sys.points[a].x == sys.points[b].x {
            violations.push(PositionViolation::SharedX(a, b));
        }
    }
    for i in 0..sys.lines.len() {
        for j in i + 1..sys.lines.len() {
            if sys.lines[i] == sys.lines[j] {
                violations.push(PositionViolation::DuplicateLine(i, j));
            }
        }
    }
    let rx = reference_x(sys);
    let (line_order, ties) = line_order_at(&sys.lines, &rx);
    for (a, b) in ties {
        if sys.lines[a] != sys.lines[b] {
            violations.push(PositionViolation::MeetOnReference(a, b));
        }
    }
    PositionReport {
        violations,
        reference_x: rx,
        line_order,
    }
}
