//! Edge-ordered graphs and the ordered five-vertex path.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::PatternError;
use crate::synthesis::{Color, CurveFamily};
use crate::verifier::{is_x_monotone, locally_above, TangencyReport};

/// Simple graph whose edges carry distinct ranks `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeOrderedGraph {
    #[serde(rename = "n")]
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
    pub order: Vec<usize>,
}

impl EdgeOrderedGraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>, order: Vec<usize>) -> Result<Self, PatternError> {
        let g = EdgeOrderedGraph { vertex_count, edges, order };
        g.validate()?;
        Ok(g)
    }

    /// Edges ranked in the order given.
    pub fn in_listed_order(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self, PatternError> {
        let order = (1..=edges.len()).collect();
        Self::new(vertex_count, edges, order)
    }

    pub fn validate(&self) -> Result<(), PatternError> {
        let bad = |s: String| Err(PatternError::InvalidGraph(s));
        if self.order.len() != self.edges.len() {
            return bad(format!("{} edges but {} ranks", self.edges.len(), self.order.len()));
        }
        let mut seen = HashSet::new();
        for &(u, v) in &self.edges {
            if u >= self.vertex_count || v >= self.vertex_count {
                return bad(format!("edge ({u}, {v}) out of range"));
            }
            if u == v {
                return bad(format!("loop at {u}"));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return bad(format!("repeated edge ({u}, {v})"));
            }
        }
        let mut ranks = self.order.clone();
        ranks.sort_unstable();
        if ranks.iter().enumerate().any(|(i, &r)| r != i + 1) {
            return bad("order is not a permutation of 1..m".into());
        }
        Ok(())
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Neighbors of each vertex with the rank of the connecting edge.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for (&(u, v), &r) in self.edges.iter().zip(&self.order) {
            adj[u].push((v, r));
            adj[v].push((u, r));
        }
        adj
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self, PatternError> {
        let g: EdgeOrderedGraph = serde_json::from_str(s).map_err(|e| PatternError::Json(e.to_string()))?;
        g.validate()?;
        Ok(g)
    }
}

/// A path `a b c d e` on distinct vertices with `ab < cd < bc < de`, if any.
pub fn contains_forbidden_p5(g: &EdgeOrderedGraph) -> Option<[usize; 5]> {
    if g.edges.len() < 4 {
        return None;
    }
    let adj = g.adjacency();
    for b in 0..g.vertex_count {
        for &(c, bc) in &adj[b] {
            for &(d, cd) in &adj[c] {
                if d == b || cd > bc {
                    continue;
                }
                for &(a, ab) in &adj[b] {
                    if a == c || a == d || ab > cd {
                        continue;
                    }
                    for &(e, de) in &adj[d] {
                        if e != a && e != b && e != c && de > bc {
                            return Some([a, b, c, d, e]);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Split the tangency graph of an x-monotone family by which curve is on top
/// near each tangency, and order each part by tangency x-coordinate.
///
/// Vertices are curve indices of the family. The first graph holds the
/// tangencies where red is above blue.
pub fn xmon_tangency_graphs(
    family: &CurveFamily,
    report: &TangencyReport,
) -> Result<(EdgeOrderedGraph, EdgeOrderedGraph), PatternError> {
    for (i, c) in family.curves.iter().enumerate() {
        if !is_x_monotone(&c.polyline) {
            return Err(PatternError::NotXMonotone(i));
        }
    }
    let mut tangencies: Vec<_> = report.tangent_pairs.iter().collect();
    tangencies.sort_by(|a, b| a.2.x.cmp(&b.2.x));
    for w in tangencies.windows(2) {
        if w[0].2.x == w[1].2.x {
            return Err(PatternError::DuplicateTangencyX(w[0].0, w[1].0));
        }
    }
    let (mut above, mut below) = (Vec::new(), Vec::new());
    for &(red, blue, ref p) in tangencies {
        debug_assert_eq!(family.curves[red].color, Color::Red);
        let up = locally_above(&family.curves[red].polyline, &family.curves[blue].polyline, p)
            .ok_or(PatternError::NoLocalOrder(red, blue))?;
        if up {
            above.push((red, blue));
        } else {
            below.push((red, blue));
        }
    }
    let n = family.curves.len();
    Ok((
        EdgeOrderedGraph::in_listed_order(n, above)?,
        EdgeOrderedGraph::in_listed_order(n, below)?,
    ))
}
