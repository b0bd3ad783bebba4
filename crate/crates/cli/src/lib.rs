//! File formats and rendering for the orthogonal drawing pipeline: the JSON
//! graph format, representation and drawing outputs, and SVG emission.

pub mod format;
pub mod svg;
