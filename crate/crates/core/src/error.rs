use std::fmt;

use thiserror::Error;

use crate::geometry::Point;

/// Pipeline stage names used when an end-to-end run fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Partition,
    Regularity,
    DenseBox,
    SameType,
    TransversalGraph,
    CrossingSearch,
    Bundles,
    Constants,
    Verification,
    Coloring,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Stage::Partition => "random-balanced-partition",
            Stage::Regularity => "regular-box-partition",
            Stage::DenseBox => "select-dense-regular-box",
            Stage::SameType => "same-type-refine",
            Stage::TransversalGraph => "transversal-graph",
            Stage::CrossingSearch => "find-pairwise-crossing-edges",
            Stage::Bundles => "build-bundles",
            Stage::Constants => "max-feasible-constants",
            Stage::Verification => "verify-conditions",
            Stage::Coloring => "bundle-coloring",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("coordinate {0} does not fit in 32 bits")]
    CoordinateRange(i64),
    #[error("duplicate point {point:?} at ids {first} and {second}")]
    DuplicatePoint { point: Point, first: usize, second: usize },
    #[error("points {0:?} are collinear")]
    Collinear([usize; 3]),
    #[error("point sets differ in size ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("mapping is not a bijection: {0}")]
    NotBijection(String),
    #[error("vertex id {id} out of range for {n} vertices")]
    VertexOutOfRange { id: usize, n: usize },
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("need at least {need} vertices, got {got}")]
    TooFewVertices { need: usize, got: usize },
    #[error("vertex sets overlap at vertex {0}")]
    Overlap(usize),
    #[error("vertex set is empty")]
    EmptySet,
    #[error("repeated vertex {0} in tuple")]
    RepeatedVertex(usize),
    #[error("k must be at least 2, got {0}")]
    ColorCount(usize),
    #[error("invalid edge order: {0}")]
    EdgeOrder(String),
    #[error("coloring covers {colored} of {edges} edges")]
    PartialColoring { colored: usize, edges: usize },
    #[error("color {color} out of range 1..={k}")]
    ColorRange { color: u32, k: usize },
    #[error("edge {edge} lies in bundles {first} and {second}")]
    EdgeInTwoBundles { edge: usize, first: usize, second: usize },
    #[error("epsilon {0} must lie strictly between 0 and 1")]
    Epsilon(String),
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("invalid certificate: {0}")]
    Certificate(String),
    #[error("{what} hit its iteration cap ({progress})")]
    SearchExhausted { what: String, progress: String },
    #[error("vacuous instance: the graph has no crossing pairs")]
    Vacuous,
    #[error("pipeline stage {stage} failed: {detail}")]
    Pipeline { stage: Stage, detail: String },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn pipeline(stage: Stage, detail: impl Into<String>) -> Self {
        Error::Pipeline { stage, detail: detail.into() }
    }

    /// Stage that failed, when this is a pipeline failure.
    pub fn stage(&self) -> Option<Stage> {
        match self {
            Error::Pipeline { stage, .. } => Some(*stage),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
