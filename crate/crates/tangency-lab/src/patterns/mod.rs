//! Forbidden-pattern detectors for the combinatorial side of the bounds.
//!
//! Edge-ordered graphs and the ordered path `ab < cd < bc < de`, the star
//! redrawing of a grounded family with its self-crossing checks, ordered
//! adjacency matrices with positive 6-cycles, and tiny exhaustive searches.

mod drawn;
mod extremal;
mod matrix;
mod ordered;

pub use drawn::{
    check_claim_p2, star_redraw, BaseChoice, ClaimReport, ClaimViolation, DrawnBipartiteGraph, DrawnEdge,
    DrawnVertex, EdgePart, PartId,
};
pub use extremal::{
    extremal_bruteforce_p5, extremal_bruteforce_positive_c6, MAX_P5_SEARCH, MAX_POSC6_SEARCH,
};
pub use matrix::{c4_witness, contains_positive_c6, ordered_adjacency_matrix, PositiveC6, ZeroOneMatrix};
pub use ordered::{contains_forbidden_p5, xmon_tangency_graphs, EdgeOrderedGraph};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("curve {0} is not x-monotone")]
    NotXMonotone(usize),
    #[error("tangencies {0} and {1} share an x-coordinate; perturb the input")]
    DuplicateTangencyX(usize, usize),
    #[error("curves {0} and {1} have no above/below relation at their tangency")]
    NoLocalOrder(usize, usize),
    #[error("the report has violations; redraw needs a clean family")]
    UncleanReport,
    #[error("family is not grounded")]
    NotGrounded,
    #[error("base point of curve {0} is not on the curve")]
    BaseNotOnCurve(usize),
    #[error("tangency of curves {0} and {1} sits at a base point")]
    DegeneratePart(usize, usize),
    #[error("base points of curves {0} and {1} have the same height")]
    TiedBase(usize, usize),
    #[error("search size {0} exceeds the limit {1}")]
    TooLarge(usize, usize),
    #[error("json: {0}")]
    Json(String),
    #[error(transparent)]
    Verify(#[from] crate::verifier::VerifyError),
}
