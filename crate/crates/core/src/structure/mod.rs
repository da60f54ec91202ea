//! Combinatorial machinery for locating crossing bundles in dense geometric
//! graphs: same-type transversals, `K_{2,2}` counts, ε-regular pairs and box
//! partitions, box densities, pairwise-crossing edge families, and the
//! pipeline that assembles them into bundles.

mod bundles;
mod crossing_family;
mod density;
mod k22;
mod regularity;
mod same_type;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::GeometricGraph;

pub use bundles::{build_bundles, default_epsilon, BundleBuild, BundleParams};
pub use crossing_family::find_pairwise_crossing_edges;
pub use density::{
    box_density, random_balanced_partition, threshold_graph, trim_to_multiple, tuple_density, BalancedPartition,
    ThresholdGraph,
};
pub use k22::{count_k22, noncrossing_disjoint_pairs, noncrossing_pair_floor};
pub use regularity::{
    dense_regular_boxes, epsilon_regular_pair, regular_box_partition, select_dense_regular_box, BoxPartition,
    BoxWitness, IrregularityWitness, PairVerdict, Regularity, RegularityConfig, TupleBox,
};
pub use same_type::{
    same_type_check, same_type_refine, SameTypeConfig, SameTypeRefinement, SameTypeVerdict, SameTypeViolation,
};

/// Disjoint, nonempty vertex sets `X_1, …, X_t` of one point set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct VertexTuplePartition {
    parts: Vec<Vec<usize>>,
}

impl VertexTuplePartition {
    pub fn new(parts: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for part in &parts {
            if part.is_empty() {
                return Err(Error::EmptySet);
            }
            for &v in part {
                if !seen.insert(v) {
                    return Err(Error::Overlap(v));
                }
            }
        }
        Ok(VertexTuplePartition { parts })
    }

    /// Also checks that every id is a vertex of `n` points.
    pub fn within(parts: Vec<Vec<usize>>, n: usize) -> Result<Self> {
        if let Some(&id) = parts.iter().flatten().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { id, n });
        }
        VertexTuplePartition::new(parts)
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn into_parts(self) -> Vec<Vec<usize>> {
        self.parts
    }
}

impl TryFrom<Vec<Vec<usize>>> for VertexTuplePartition {
    type Error = Error;

    fn try_from(parts: Vec<Vec<usize>>) -> Result<Self> {
        VertexTuplePartition::new(parts)
    }
}

impl From<VertexTuplePartition> for Vec<Vec<usize>> {
    fn from(p: VertexTuplePartition) -> Self {
        p.parts
    }
}

/// A pair of disjoint vertex sets and every graph edge between them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bundle {
    pub y: Vec<usize>,
    pub z: Vec<usize>,
    /// Edge indices of `E(Y, Z)`, ascending.
    pub edges: Vec<usize>,
    /// `min(|Y|, |Z|)`.
    pub size_floor: usize,
}

impl Bundle {
    pub fn new(graph: &GeometricGraph, y: Vec<usize>, z: Vec<usize>) -> Result<Self> {
        if y.is_empty() || z.is_empty() {
            return Err(Error::EmptySet);
        }
        let edges = graph.bipartite_edges(&y, &z)?;
        let size_floor = y.len().min(z.len());
        Ok(Bundle { y, z, edges, size_floor })
    }

    /// Checks `Y ∩ Z = ∅` and that `edges` is exactly `E(Y, Z)`.
    pub fn validate(&self, graph: &GeometricGraph) -> Result<()> {
        let mut expected = graph.bipartite_edges(&self.y, &self.z)?;
        let mut got = self.edges.clone();
        expected.sort_unstable();
        got.sort_unstable();
        if expected != got {
            return Err(Error::Parameter(format!(
                "bundle edge list has {} edges but E(Y, Z) has {}",
                got.len(),
                expected.len()
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_validation() {
        assert!(VertexTuplePartition::new(vec![vec![0, 1], vec![2]]).is_ok());
        assert!(matches!(VertexTuplePartition::new(vec![vec![0, 1], vec![1]]), Err(Error::Overlap(1))));
        assert!(matches!(VertexTuplePartition::new(vec![vec![0], vec![]]), Err(Error::EmptySet)));
        assert!(matches!(
            VertexTuplePartition::within(vec![vec![0], vec![5]], 4),
            Err(Error::VertexOutOfRange { id: 5, n: 4 })
        ));
        let p: VertexTuplePartition = serde_json::from_str("[[0,1],[2]]").unwrap();
        assert_eq!(p.len(), 2);
        assert!(serde_json::from_str::<VertexTuplePartition>("[[0,1],[1]]").is_err());
    }
}
