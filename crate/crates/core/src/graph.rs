//! Geometric graphs, densities and exact crossing enumeration.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{self, det, Point, PointSet};
use crate::rational::{self, ratio, Rational};

const NO_EDGE: u32 = u32::MAX;

/// A point set with straight-line edges. Edges are stored as `(u, v)` with `u < v`.
#[derive(Debug, Clone)]
pub struct GeometricGraph {
    points: PointSet,
    edges: Vec<(usize, usize)>,
    /// `n × n` lookup from vertex pair to edge index.
    lookup: Vec<u32>,
}

impl PartialEq for GeometricGraph {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points && self.edges == other.edges
    }
}

impl GeometricGraph {
    pub fn new(points: PointSet, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = points.len();
        let mut lookup = vec![NO_EDGE; n * n];
        let mut list = Vec::new();
        for (a, b) in edges {
            for id in [a, b] {
                if id >= n {
                    return Err(Error::VertexOutOfRange { id, n });
                }
            }
            if a == b {
                return Err(Error::LoopEdge(a));
            }
            let (u, v) = (a.min(b), a.max(b));
            if lookup[u * n + v] != NO_EDGE {
                return Err(Error::DuplicateEdge(u, v));
            }
            let idx = list.len() as u32;
            lookup[u * n + v] = idx;
            lookup[v * n + u] = idx;
            list.push((u, v));
        }
        Ok(GeometricGraph { points, edges: list, lookup })
    }

    pub fn complete(points: PointSet) -> Self {
        let n = points.len();
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        GeometricGraph::new(points, edges).expect("complete graph edges are valid")
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn point(&self, v: usize) -> Point {
        self.points.get(v)
    }

    pub fn vertex_count(&self) -> usize {
        self.points.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn segment(&self, e: usize) -> (Point, Point) {
        let (u, v) = self.edges[e];
        (self.points.get(u), self.points.get(v))
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let n = self.vertex_count();
        if u >= n || v >= n {
            return None;
        }
        let idx = self.lookup[u * n + v];
        (idx != NO_EDGE).then_some(idx as usize)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn degree(&self, v: usize) -> usize {
        let n = self.vertex_count();
        self.lookup[v * n..(v + 1) * n].iter().filter(|&&i| i != NO_EDGE).count()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.vertex_count();
        self.lookup[v * n..(v + 1) * n].iter().enumerate().filter(|(_, &i)| i != NO_EDGE).map(|(u, _)| u)
    }

    pub fn crosses(&self, e: usize, f: usize) -> bool {
        geometry::segments_cross(self.segment(e), self.segment(f))
    }

    /// `|E| / C(|V|, 2)`.
    pub fn density(&self) -> Result<Rational> {
        let n = self.vertex_count();
        if n < 2 {
            return Err(Error::TooFewVertices { need: 2, got: n });
        }
        Ok(ratio(self.edge_count() as u64, (n * (n - 1) / 2) as u64))
    }

    /// All crossing edge pairs, by brute force over edge pairs.
    ///
    /// Uses a precomputed table of orientation signs per (edge, vertex), and
    /// splits the outer loop across threads. The result is sorted, so it is
    /// identical to a sequential scan.
    pub fn crossing_set(&self) -> CrossingSet {
        let table = SideTable::new(self);
        let m = self.edge_count();
        let pairs: Vec<(usize, usize)> = (0..m)
            .into_par_iter()
            .flat_map_iter(|e| {
                let table = &table;
                (e + 1..m).filter(move |&f| table.crosses(e, f)).map(move |f| (e, f))
            })
            .collect();
        CrossingSet { count: pairs.len() as u64, pairs }
    }

    /// `E(X, Y)`: indices of edges with one endpoint in `x` and the other in `y`.
    pub fn bipartite_edges(&self, x: &[usize], y: &[usize]) -> Result<Vec<usize>> {
        let n = self.vertex_count();
        let in_y = membership(y, n)?;
        let in_x = membership(x, n)?;
        if let Some(v) = (0..n).find(|&v| in_x[v] && in_y[v]) {
            return Err(Error::Overlap(v));
        }
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(_, &(u, v))| (in_x[u] && in_y[v]) || (in_x[v] && in_y[u]))
            .map(|(i, _)| i)
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Number of `A`–`B` edges, without validation.
    pub(crate) fn count_between(&self, a: &[usize], b: &[usize]) -> u64 {
        let mut count = 0;
        for &u in a {
            for &v in b {
                if self.has_edge(u, v) {
                    count += 1;
                }
            }
        }
        count
    }

    /// `d(A, B) = |E(A, B)| / (|A||B|)`.
    pub fn pair_density(&self, a: &[usize], b: &[usize]) -> Result<PairDensity> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::EmptySet);
        }
        let edge_count = self.bipartite_edges(a, b)?.len() as u64;
        Ok(PairDensity::new(a.len(), b.len(), edge_count))
    }

    /// Graph on `ids` (renumbered `0..ids.len()`) keeping the induced edges.
    pub fn induced(&self, ids: &[usize]) -> GeometricGraph {
        let sub = self.points.subset(ids);
        let mut edges = Vec::new();
        for (i, &u) in ids.iter().enumerate() {
            for (j, &v) in ids.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    edges.push((i, j));
                }
            }
        }
        GeometricGraph::new(sub, edges).expect("induced subgraph of a valid graph")
    }

    /// Parses the graph file format: a point-set block, an `EDGES` line, then `i j` pairs.
    pub fn parse(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        let mut edges = Vec::new();
        let mut in_edges = false;
        for (lineno, line) in text.lines().enumerate() {
            let Some(body) = geometry::strip_comment(line) else { continue };
            let line = lineno + 1;
            if body == "EDGES" {
                if in_edges {
                    return Err(Error::Parse { line, msg: "second EDGES marker".into() });
                }
                in_edges = true;
                continue;
            }
            if in_edges {
                let mut it = body.split_whitespace();
                let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
                    return Err(Error::Parse { line, msg: format!("expected `i j`, got `{body}`") });
                };
                let id = |s: &str| {
                    s.parse::<usize>().map_err(|e| Error::Parse { line, msg: format!("bad vertex id `{s}`: {e}") })
                };
                edges.push((id(a)?, id(b)?));
            } else {
                points.push(geometry::parse_point(body, line)?);
            }
        }
        GeometricGraph::new(PointSet::new(points)?, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = self.points.to_text();
        out.push_str("EDGES\n");
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

fn membership(ids: &[usize], n: usize) -> Result<Vec<bool>> {
    let mut mark = vec![false; n];
    for &id in ids {
        if id >= n {
            return Err(Error::VertexOutOfRange { id, n });
        }
        mark[id] = true;
    }
    Ok(mark)
}

/// Orientation sign of every vertex against every edge's supporting line.
struct SideTable<'g> {
    graph: &'g GeometricGraph,
    n: usize,
    sides: Vec<i8>,
}

impl<'g> SideTable<'g> {
    fn new(graph: &'g GeometricGraph) -> Self {
        let n = graph.vertex_count();
        let sides = graph
            .edges()
            .par_iter()
            .flat_map_iter(|&(u, v)| {
                let (a, b) = (graph.point(u), graph.point(v));
                (0..n).map(move |w| det(a, b, graph.point(w)).signum() as i8)
            })
            .collect();
        SideTable { graph, n, sides }
    }

    #[inline]
    fn side(&self, e: usize, v: usize) -> i8 {
        self.sides[e * self.n + v]
    }

    #[inline]
    fn crosses(&self, e: usize, f: usize) -> bool {
        let (a, b) = self.graph.edge(e);
        let (c, d) = self.graph.edge(f);
        if a == c || a == d || b == c || b == d {
            return false;
        }
        self.side(e, c) * self.side(e, d) < 0 && self.side(f, a) * self.side(f, b) < 0
    }
}

/// Every unordered pair of crossing edges, as `(e, f)` with `e < f`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossingSet {
    pub pairs: Vec<(usize, usize)>,
    pub count: u64,
}

impl CrossingSet {
    /// Crossing partners of every edge, each list sorted ascending.
    pub fn partners(&self, edge_count: usize) -> Vec<Vec<usize>> {
        let mut lists = vec![Vec::new(); edge_count];
        for &(e, f) in &self.pairs {
            lists[e].push(f);
            lists[f].push(e);
        }
        for l in &mut lists {
            l.sort_unstable();
        }
        lists
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairDensity {
    pub a_size: usize,
    pub b_size: usize,
    pub edge_count: u64,
    #[serde(with = "rational")]
    pub value: Rational,
}

impl PairDensity {
    pub fn new(a_size: usize, b_size: usize, edge_count: u64) -> Self {
        let value = ratio(edge_count, (a_size * b_size) as u64);
        PairDensity { a_size, b_size, edge_count, value }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use num_traits::Zero;

    fn convex(n: usize) -> PointSet {
        PointSet::new((0..n as i32).map(|i| Point::new(i, i * i)).collect()).unwrap()
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn density_examples() {
        assert_eq!(GeometricGraph::complete(convex(5)).density().unwrap(), int(1));
        assert!(GeometricGraph::new(convex(5), []).unwrap().density().unwrap().is_zero());
        let g = GeometricGraph::new(convex(4), [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(g.density().unwrap(), ratio(1, 2));
        let one = GeometricGraph::new(convex(1), []).unwrap();
        assert!(matches!(one.density(), Err(Error::TooFewVertices { .. })));
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(GeometricGraph::new(convex(3), [(0, 0)]), Err(Error::LoopEdge(0))));
        assert!(matches!(GeometricGraph::new(convex(3), [(0, 1), (1, 0)]), Err(Error::DuplicateEdge(0, 1))));
        assert!(matches!(GeometricGraph::new(convex(3), [(0, 3)]), Err(Error::VertexOutOfRange { id: 3, n: 3 })));
    }

    #[test]
    fn convex_complete_crossings() {
        let g = GeometricGraph::complete(convex(4));
        assert_eq!(g.crossing_set().count, 1);
        for n in 4..=12u64 {
            let g = GeometricGraph::complete(convex(n as usize));
            assert_eq!(g.crossing_set().count, binomial(n, 4), "n = {n}");
        }
    }

    #[test]
    fn bipartite_and_pair_density() {
        let g = GeometricGraph::complete(convex(4));
        assert_eq!(g.bipartite_edges(&[0, 1], &[2, 3]).unwrap().len(), 4);
        let path = GeometricGraph::new(convex(4), [(0, 1), (2, 3)]).unwrap();
        assert!(path.bipartite_edges(&[0], &[2, 3]).unwrap().is_empty());
        assert!(matches!(g.bipartite_edges(&[0, 1], &[1, 2]), Err(Error::Overlap(1))));

        assert_eq!(g.pair_density(&[0, 1], &[2, 3]).unwrap().value, int(1));
        assert!(path.pair_density(&[0, 1], &[2, 3]).unwrap().value.is_zero());
        let half = GeometricGraph::new(convex(4), [(0, 2), (1, 3)]).unwrap();
        let d = half.pair_density(&[0, 1], &[2, 3]).unwrap();
        assert_eq!((d.edge_count, d.value), (2, ratio(1, 2)));
        assert!(matches!(g.pair_density(&[], &[2]), Err(Error::EmptySet)));
    }

    #[test]
    fn graph_file_round_trip() {
        let text = "# pts\n0 0\n1 3\n4 1\n2 2\nEDGES\n0 1\n2 3 # diag\n";
        let g = GeometricGraph::parse(text).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (2, 3)]);
        assert_eq!(GeometricGraph::parse(&g.to_text()).unwrap(), g);
        assert!(matches!(GeometricGraph::parse("0 0\n1 1\nEDGES\n0\n"), Err(Error::Parse { line: 4, .. })));
    }

    #[test]
    fn partners_are_symmetric() {
        let g = GeometricGraph::complete(convex(6));
        let cs = g.crossing_set();
        let lists = cs.partners(g.edge_count());
        let total: usize = lists.iter().map(Vec::len).sum();
        assert_eq!(total as u64, 2 * cs.count);
        for (e, l) in lists.iter().enumerate() {
            for &f in l {
                assert!(lists[f].contains(&e));
                assert!(g.crosses(e, f));
            }
        }
    }
}
