//! Tools for two-colored complete 3-uniform hypergraphs: colorings indexed
//! by colexicographic triple rank, canonical target hypergraphs (Fano plane,
//! tight paths and cycles), monochromatic structure detectors, extremal
//! coloring generators, brute-force oracles and a structural search pipeline
//! that either extracts a long red tight path, exhibits a blue Fano plane,
//! or reports which structural step failed.

pub mod coloring;
pub mod construct;
pub mod detect;
pub mod graph;
pub mod hg3c;
pub mod oracle;
pub mod patterns;
pub mod pipeline;

pub use coloring::{Color, Coloring, TripleId};
pub use patterns::Pattern;
