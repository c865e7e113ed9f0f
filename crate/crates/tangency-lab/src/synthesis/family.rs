//! Curve families and their JSON form.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{from_text, point_from_text, point_to_text, to_text, ParseRationalError};
use crate::{Point, Polyline, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

/// Axis-parallel box `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxB {
    pub xmin: Rational,
    pub xmax: Rational,
    pub ymin: Rational,
    pub ymax: Rational,
}

impl BoxB {
    pub fn contains_strictly(&self, p: &Point) -> bool {
        self.xmin < p.x && p.x < self.xmax && self.ymin < p.y && p.y < self.ymax
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    pub id: usize,
    pub color: Color,
    /// Line index for red curves, point index for blue ones.
    pub source: usize,
    pub polyline: Polyline,
    pub declared_tangencies: Vec<(usize, Point)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveFamily {
    pub curves: Vec<Curve>,
    pub bbox: BoxB,
    pub strip: Option<(Rational, Rational)>,
    pub grounded: bool,
}

impl CurveFamily {
    pub fn of_color(&self, c: Color) -> impl Iterator<Item = &Curve> {
        self.curves.iter().filter(move |cv| cv.color == c)
    }

    pub fn vertex_count(&self) -> usize {
        self.curves.iter().map(|c| c.polyline.len()).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&FamilyJson::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, FamilyParseError> {
        let raw: FamilyJson = serde_json::from_str(s)?;
        raw.into_family()
    }
}

#[derive(Debug, Error)]
pub enum FamilyParseError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
    #[error("curve {0}: {1}")]
    Curve(usize, String),
}

#[derive(Serialize, Deserialize)]
struct BoxJson {
    xmin: String,
    xmax: String,
    ymin: String,
    ymax: String,
}

#[derive(Serialize, Deserialize)]
struct CurveJson {
    id: usize,
    color: Color,
    source: usize,
    vertices: Vec<[String; 2]>,
    declared_tangencies: Vec<(usize, [String; 2])>,
}

#[derive(Serialize, Deserialize)]
struct FamilyJson {
    grounded: bool,
    strip: Option<[String; 2]>,
    #[serde(rename = "box")]
    bbox: BoxJson,
    curves: Vec<CurveJson>,
}

impl From<&CurveFamily> for FamilyJson {
    fn from(f: &CurveFamily) -> Self {
        FamilyJson {
            grounded: f.grounded,
            strip: f.strip.as_ref().map(|(a, b)| [to_text(a), to_text(b)]),
            bbox: BoxJson {
                xmin: to_text(&f.bbox.xmin),
                xmax: to_text(&f.bbox.xmax),
                ymin: to_text(&f.bbox.ymin),
                ymax: to_text(&f.bbox.ymax),
            },
            curves: f
                .curves
                .iter()
                .map(|c| CurveJson {
                    id: c.id,
                    color: c.color,
                    source: c.source,
                    vertices: c.polyline.vertices.iter().map(point_to_text).collect(),
                    declared_tangencies: c
                        .declared_tangencies
                        .iter()
                        .map(|(o, p)| (*o, point_to_text(p)))
                        .collect(),
                })
                .collect(),
        }
    }
}

impl FamilyJson {
    fn into_family(self) -> Result<CurveFamily, FamilyParseError> {
        let bbox = BoxB {
            xmin: from_text(&self.bbox.xmin)?,
            xmax: from_text(&self.bbox.xmax)?,
            ymin: from_text(&self.bbox.ymin)?,
            ymax: from_text(&self.bbox.ymax)?,
        };
        let strip = match self.strip {
            Some([a, b]) => Some((from_text(&a)?, from_text(&b)?)),
            None => None,
        };
        let mut curves = Vec::with_capacity(self.curves.len());
        for (pos, c) in self.curves.into_iter().enumerate() {
            if c.id != pos {
                return Err(FamilyParseError::Curve(
                    c.id,
                    format!("ids must be 0..n in order, found at position {pos}"),
                ));
            }
            let vertices = c
                .vertices
                .iter()
                .map(point_from_text)
                .collect::<Result<Vec<_>, _>>()?;
            let polyline =
                Polyline::new(vertices).map_err(|e| FamilyParseError::Curve(c.id, e.to_string()))?;
            let declared_tangencies = c
                .declared_tangencies
                .iter()
                .map(|(o, p)| Ok((*o, point_from_text(p)?)))
                .collect::<Result<Vec<_>, ParseRationalError>>()?;
            curves.push(Curve {
                id: c.id,
                color: c.color,
                source: c.source,
                polyline,
                declared_tangencies,
            });
        }
        Ok(CurveFamily {
            curves,
            bbox,
            strip,
            grounded: self.grounded,
        })
    }
}
