//! # crossmono
//!
//! Edge k-colorings of dense geometric graphs with few monochromatic
//! crossing pairs.
//!
//! A uniformly random k-coloring makes a `1/k` share of the crossing pairs
//! monochromatic in expectation. This crate colors dense geometric graphs
//! strictly better than that: it locates `k` *bundles* (pairs of vertex sets
//! whose edges cross every other bundle's edges), gives bundle `i` color
//! `i`, colors the remaining edges by conditional expectations, and emits an
//! exact certificate for the guaranteed ratio `1/k − c`.
//!
//! Everything is exact: integer coordinates, 128-bit orientation
//! determinants, and arbitrary-precision rationals for every density and
//! constant.
//!
//! Runnable walkthroughs live in `examples/`:
//!
//! ```bash
//! cargo run --example full_pipeline
//! ```

pub mod certificate;
pub mod cli;
pub mod coloring;
pub mod error;
pub mod generate;
pub mod geometry;
pub mod graph;
pub mod rational;
pub mod report;
pub mod structure;

pub use certificate::{end_to_end, Certificate, Constants};
pub use coloring::{ColoringStats, EdgeColoring, EdgeOrder};
pub use error::{Error, Result, Stage};
pub use geometry::{Orientation, Point, PointSet};
pub use graph::{CrossingSet, GeometricGraph};
pub use rational::Rational;
pub use structure::{Bundle, BundleParams};
