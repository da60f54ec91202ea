//! Random balanced partitions, tuple and box densities, and threshold graphs.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::TupleBox;
use crate::error::{Error, Result};
use crate::graph::GeometricGraph;
use crate::rational::{self, ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalancedPartition {
    /// `r` blocks of equal size, vertex ids of the input graph.
    pub parts: Vec<Vec<usize>>,
    /// Minimum-degree vertices dropped so that `r` divides the vertex count, in removal order.
    pub removed: Vec<usize>,
}

impl BalancedPartition {
    pub fn part_size(&self) -> usize {
        self.parts.first().map_or(0, Vec::len)
    }
}

/// Repeatedly drops a vertex of minimum current degree (smallest id on ties)
/// until `r` divides the number of remaining vertices.
///
/// Returns `(kept, removed)`. Dropping a vertex of degree at most the average
/// never lowers the edge density.
pub fn trim_to_multiple(graph: &GeometricGraph, r: usize) -> (Vec<usize>, Vec<usize>) {
    let n = graph.vertex_count();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();
    let mut removed = Vec::new();
    let mut remaining = n;
    while r > 0 && !remaining.is_multiple_of(r) {
        let v = (0..n).filter(|&v| alive[v]).min_by_key(|&v| (degree[v], v)).expect("vertices remain");
        alive[v] = false;
        remaining -= 1;
        for u in graph.neighbors(v) {
            degree[u] -= 1;
        }
        removed.push(v);
    }
    ((0..n).filter(|&v| alive[v]).collect(), removed)
}

/// Uniform random partition into `r` blocks of equal size, after trimming
/// minimum-degree vertices so that the sizes work out.
pub fn random_balanced_partition(graph: &GeometricGraph, r: usize, seed: u64) -> Result<BalancedPartition> {
    if r < 2 {
        return Err(Error::Parameter(format!("partition needs r >= 2, got {r}")));
    }
    let n = graph.vertex_count();
    if n < r {
        return Err(Error::TooFewVertices { need: r, got: n });
    }
    let (mut kept, removed) = trim_to_multiple(graph, r);
    kept.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let size = kept.len() / r;
    let parts = kept
        .chunks(size)
        .map(|c| {
            let mut c = c.to_vec();
            c.sort_unstable();
            c
        })
        .collect();
    Ok(BalancedPartition { parts, removed })
}

/// `‖G[v]‖ / C(r, 2)` for a tuple of `r ≥ 2` distinct vertices.
pub fn tuple_density(graph: &GeometricGraph, tuple: &[usize]) -> Result<Rational> {
    let r = tuple.len();
    if r < 2 {
        return Err(Error::TooFewVertices { need: 2, got: r });
    }
    let n = graph.vertex_count();
    let mut seen = vec![false; n];
    for &v in tuple {
        if v >= n {
            return Err(Error::VertexOutOfRange { id: v, n });
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::RepeatedVertex(v));
        }
    }
    let mut induced = 0u64;
    for (i, &u) in tuple.iter().enumerate() {
        for &v in &tuple[i + 1..] {
            if graph.has_edge(u, v) {
                induced += 1;
            }
        }
    }
    Ok(ratio(induced, (r * (r - 1) / 2) as u64))
}

/// Average tuple density over the box, computed as `C(r,2)⁻¹ Σ_{i<j} d(W_i, W_j)`.
pub fn box_density(graph: &GeometricGraph, w: &TupleBox) -> Result<Rational> {
    let factors = &w.factors;
    let r = factors.len();
    if r < 2 {
        return Err(Error::TooFewVertices { need: 2, got: r });
    }
    if factors.iter().any(Vec::is_empty) {
        return Err(Error::EmptySet);
    }
    let mut sum = Rational::zero();
    for i in 0..r {
        for j in i + 1..r {
            sum += graph.pair_density(&factors[i], &factors[j])?.value;
        }
    }
    Ok(sum / Rational::from_integer(((r * (r - 1)) / 2).into()))
}

/// The graph `R(W, δ)` on factor indices `0..r`: `i ~ j` iff `d(W_i, W_j) ≥ δ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdGraph {
    pub r: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(with = "rational")]
    pub threshold: Rational,
}

impl ThresholdGraph {
    pub fn density(&self) -> Rational {
        if self.r < 2 {
            return Rational::zero();
        }
        ratio(self.edges.len() as u64, (self.r * (self.r - 1) / 2) as u64)
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let (a, b) = (i.min(j), i.max(j));
        self.edges.binary_search(&(a, b)).is_ok()
    }
}

pub fn threshold_graph(graph: &GeometricGraph, w: &TupleBox, delta: &Rational) -> Result<ThresholdGraph> {
    if delta < &Rational::zero() || delta > &Rational::one() {
        return Err(Error::Parameter(format!("threshold {delta} outside [0, 1]")));
    }
    let r = w.factors.len();
    let mut edges = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            if &graph.pair_density(&w.factors[i], &w.factors[j])?.value >= delta {
                edges.push((i, j));
            }
        }
    }
    Ok(ThresholdGraph { r, edges, threshold: delta.clone() })
}
