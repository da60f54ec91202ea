use super::Bundle;
use crate::error::{Error, Result};
use crate::graph::GeometricGraph;

/// Number of `K_{2,2}` copies `({y1, y2}, {z1, z2})` between `y` and `z`.
///
/// Counts common `Y`-neighbours of every pair of `Z` vertices.
pub fn count_k22(graph: &GeometricGraph, y: &[usize], z: &[usize]) -> Result<u64> {
    let n = graph.vertex_count();
    let mut in_y = vec![false; n];
    for &v in y.iter().chain(z) {
        if v >= n {
            return Err(Error::VertexOutOfRange { id: v, n });
        }
    }
    for &v in y {
        in_y[v] = true;
    }
    if let Some(&v) = z.iter().find(|&&v| in_y[v]) {
        return Err(Error::Overlap(v));
    }
    let mut total = 0u64;
    for (i, &z1) in z.iter().enumerate() {
        for &z2 in &z[i + 1..] {
            let common = y.iter().filter(|&&v| graph.has_edge(v, z1) && graph.has_edge(v, z2)).count() as u64;
            total += common * common.saturating_sub(1) / 2;
        }
    }
    Ok(total)
}

/// Pairs of vertex-disjoint bundle edges that do not cross.
pub fn noncrossing_disjoint_pairs(graph: &GeometricGraph, bundle: &Bundle) -> u64 {
    let edges = &bundle.edges;
    let mut count = 0;
    for (i, &e) in edges.iter().enumerate() {
        let (a, b) = graph.edge(e);
        for &f in &edges[i + 1..] {
            let (c, d) = graph.edge(f);
            if a != c && a != d && b != c && b != d && !graph.crosses(e, f) {
                count += 1;
            }
        }
    }
    count
}

/// Lower bound on [`noncrossing_disjoint_pairs`]: the `K_{2,2}` count of the bundle.
///
/// Each `K_{2,2}` has two vertex-disjoint edge pairs and at most one of them
/// can cross, and distinct copies have distinct vertex sets, so every copy
/// contributes its own non-crossing pair.
pub fn noncrossing_pair_floor(graph: &GeometricGraph, bundle: &Bundle) -> Result<u64> {
    count_k22(graph, &bundle.y, &bundle.z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Point, PointSet};

    fn complete_bipartite(a: usize, b: usize) -> (GeometricGraph, Vec<usize>, Vec<usize>) {
        let pts: Vec<Point> = (0..(a + b) as i32).map(|i| Point::new(i, i * i)).collect();
        let y: Vec<usize> = (0..a).collect();
        let z: Vec<usize> = (a..a + b).collect();
        let edges: Vec<_> = y.iter().flat_map(|&u| z.iter().map(move |&v| (u, v))).collect();
        (GeometricGraph::new(PointSet::new(pts).unwrap(), edges).unwrap(), y, z)
    }

    #[test]
    fn complete_bipartite_counts() {
        let (g, y, z) = complete_bipartite(2, 2);
        assert_eq!(count_k22(&g, &y, &z).unwrap(), 1);
        let (g, y, z) = complete_bipartite(3, 3);
        assert_eq!(count_k22(&g, &y, &z).unwrap(), 9);
        assert!(matches!(count_k22(&g, &[0, 1], &[1, 4]), Err(Error::Overlap(1))));
    }

    #[test]
    fn single_convex_k22() {
        // Convex order y1, z1, y2, z2: y1z1/y2z2 are sides, y1z2/y2z1 are sides too.
        let pts = PointSet::new(vec![Point::new(0, 0), Point::new(4, 0), Point::new(4, 4), Point::new(0, 4)]).unwrap();
        let (y1, z1, y2, z2) = (0, 1, 2, 3);
        let g = GeometricGraph::new(pts, [(y1, z1), (y1, z2), (y2, z1), (y2, z2)]).unwrap();
        let bundle = Bundle::new(&g, vec![y1, y2], vec![z1, z2]).unwrap();
        assert_eq!(noncrossing_pair_floor(&g, &bundle).unwrap(), 1);
        assert!(noncrossing_disjoint_pairs(&g, &bundle) >= 1);
    }

    #[test]
    fn empty_bundle_has_zero_floor() {
        let pts = PointSet::new(vec![Point::new(0, 0), Point::new(4, 0), Point::new(4, 4)]).unwrap();
        let g = GeometricGraph::new(pts, []).unwrap();
        let bundle = Bundle::new(&g, vec![0], vec![1, 2]).unwrap();
        assert_eq!(noncrossing_pair_floor(&g, &bundle).unwrap(), 0);
        assert_eq!(noncrossing_disjoint_pairs(&g, &bundle), 0);
    }
}
