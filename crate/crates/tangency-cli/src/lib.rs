//! The pieces behind the `tangency-lab` binary: end-to-end pipeline runs,
//! scaling tables and SVG figures.

pub mod pipeline;
pub mod svg;
