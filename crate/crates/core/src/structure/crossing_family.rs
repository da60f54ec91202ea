use crate::error::{Error, Result};
use crate::graph::GeometricGraph;

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + b)
            })
        })
    }
}

struct Search<'g> {
    graph: &'g GeometricGraph,
    crossing: Vec<Bits>,
    k: usize,
}

impl Search<'_> {
    /// Vertex-disjoint edges among `cand` cannot outnumber half their endpoints.
    fn matching_bound(&self, cand: &Bits) -> usize {
        let mut seen = vec![false; self.graph.vertex_count()];
        let mut distinct = 0;
        for e in cand.iter() {
            let (u, v) = self.graph.edge(e);
            for w in [u, v] {
                if !std::mem::replace(&mut seen[w], true) {
                    distinct += 1;
                }
            }
        }
        distinct / 2
    }

    fn extend(&self, chosen: &mut Vec<usize>, cand: &Bits) -> bool {
        if chosen.len() == self.k {
            return true;
        }
        let need = self.k - chosen.len();
        if cand.count() < need || self.matching_bound(cand) < need {
            return false;
        }
        let mut remaining = cand.clone();
        for e in cand.iter() {
            // Only later candidates remain for the branch rooted at `e`.
            remaining.0[e / 64] &= !(1 << (e % 64));
            let next = remaining.and(&self.crossing[e]);
            chosen.push(e);
            if self.extend(chosen, &next) {
                return true;
            }
            chosen.pop();
            if remaining.count() < need {
                break;
            }
        }
        false
    }
}

/// `k` edges that pairwise cross, or `None` after exhaustive search.
///
/// Branch and bound over cliques of the crossing graph, exploring edges in
/// index order, so the result is the lexicographically first such family.
pub fn find_pairwise_crossing_edges(graph: &GeometricGraph, k: usize) -> Result<Option<Vec<usize>>> {
    if k < 2 {
        return Err(Error::Parameter(format!("need k >= 2 pairwise crossing edges, got {k}")));
    }
    let m = graph.edge_count();
    let mut crossing = vec![Bits::empty(m); m];
    for &(e, f) in &graph.crossing_set().pairs {
        crossing[e].set(f);
        crossing[f].set(e);
    }
    let mut all = Bits::empty(m);
    for (e, row) in crossing.iter().enumerate() {
        if row.count() + 1 >= k {
            all.set(e);
        }
    }
    let search = Search { graph, crossing, k };
    let mut chosen = Vec::with_capacity(k);
    Ok(search.extend(&mut chosen, &all).then_some(chosen))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Point, PointSet};

    #[test]
    fn single_crossing() {
        let pts = PointSet::new(vec![Point::new(0, 0), Point::new(2, 2), Point::new(0, 2), Point::new(2, 0)]).unwrap();
        let g = GeometricGraph::new(pts, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(find_pairwise_crossing_edges(&g, 2).unwrap(), Some(vec![0, 1]));
        assert_eq!(find_pairwise_crossing_edges(&g, 3).unwrap(), None);
        assert!(find_pairwise_crossing_edges(&g, 1).is_err());
    }

    #[test]
    fn parallel_matching_has_no_crossing_pair() {
        let pts: Vec<Point> = (0..5).flat_map(|i| [Point::new(i * 10, i * i), Point::new(i * 10 + 3, 100 + i * i + i)]).collect();
        let pts = PointSet::new(pts).unwrap();
        let g = GeometricGraph::new(pts, (0..5).map(|i| (2 * i, 2 * i + 1))).unwrap();
        assert_eq!(find_pairwise_crossing_edges(&g, 2).unwrap(), None);
    }
}
