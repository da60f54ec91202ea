//! Edge k-colorings and their monochromatic crossing counts.
//!
//! Three constructions are provided: independent uniform colors, a greedy
//! conditional-expectation coloring that never exceeds `crs(G)/k`
//! monochromatic pairs, and the bundle coloring that fixes color `i` on the
//! edges of bundle `i` and colors everything else greedily.

use std::fmt::Write as _;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{CrossingSet, GeometricGraph};
use crate::rational::{self, ratio, Rational};
use crate::structure::Bundle;

/// A total map from edge index to a color in `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeColoring {
    k: usize,
    colors: Vec<u32>,
}

impl EdgeColoring {
    pub fn new(k: usize, colors: Vec<u32>) -> Result<Self> {
        check_k(k)?;
        if let Some(&c) = colors.iter().find(|&&c| c == 0 || c as usize > k) {
            return Err(Error::ColorRange { color: c, k });
        }
        Ok(EdgeColoring { k, colors })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, edge: usize) -> u32 {
        self.colors[edge]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// Applies `perm[c - 1]` to every color `c`.
    pub fn relabel(&self, perm: &[u32]) -> Result<Self> {
        EdgeColoring::new(self.k, self.colors.iter().map(|&c| perm[c as usize - 1]).collect())
    }

    /// One `i j c` line per edge, in edge order.
    pub fn to_text(&self, graph: &GeometricGraph) -> String {
        let mut out = String::new();
        for (e, &c) in self.colors.iter().enumerate() {
            let (u, v) = graph.edge(e);
            let _ = writeln!(out, "{u} {v} {c}");
        }
        out
    }

    /// Parses `i j c` lines. `k` defaults to the largest color used (at least 2).
    pub fn parse(text: &str, graph: &GeometricGraph, k: Option<usize>) -> Result<Self> {
        let mut colors = vec![0u32; graph.edge_count()];
        for (lineno, line) in text.lines().enumerate() {
            let Some(body) = crate::geometry::strip_comment(line) else { continue };
            let line = lineno + 1;
            let fields: Vec<&str> = body.split_whitespace().collect();
            let [i, j, c] = fields[..] else {
                return Err(Error::Parse { line, msg: format!("expected `i j c`, got `{body}`") });
            };
            let num = |s: &str| {
                s.parse::<usize>().map_err(|e| Error::Parse { line, msg: format!("bad integer `{s}`: {e}") })
            };
            let (i, j, c) = (num(i)?, num(j)?, num(c)?);
            let e = graph
                .edge_index(i, j)
                .ok_or_else(|| Error::Parse { line, msg: format!("{{{i}, {j}}} is not an edge") })?;
            colors[e] = u32::try_from(c).map_err(|_| Error::Parse { line, msg: "color too large".into() })?;
        }
        let colored = colors.iter().filter(|&&c| c != 0).count();
        if colored != colors.len() {
            return Err(Error::PartialColoring { colored, edges: colors.len() });
        }
        let k = k.unwrap_or_else(|| colors.iter().copied().max().unwrap_or(0).max(2) as usize);
        EdgeColoring::new(k, colors)
    }
}

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::ColorCount(k));
    }
    Ok(())
}

/// Order in which the greedy coloring visits edges.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum EdgeOrder {
    /// Most crossings first, ties by smaller edge index.
    #[default]
    CrossingDegree,
    Natural,
    Shuffled(u64),
    Explicit(Vec<usize>),
}

impl EdgeOrder {
    pub fn resolve(&self, partners: &[Vec<usize>]) -> Vec<usize> {
        let m = partners.len();
        match self {
            EdgeOrder::CrossingDegree => {
                let mut order: Vec<usize> = (0..m).collect();
                order.sort_by_key(|&e| (std::cmp::Reverse(partners[e].len()), e));
                order
            }
            EdgeOrder::Natural => (0..m).collect(),
            EdgeOrder::Shuffled(seed) => {
                let mut order: Vec<usize> = (0..m).collect();
                order.shuffle(&mut ChaCha8Rng::seed_from_u64(*seed));
                order
            }
            EdgeOrder::Explicit(v) => v.clone(),
        }
    }
}

/// Each edge gets an independent uniform color from `1..=k`.
pub fn random_coloring(graph: &GeometricGraph, k: usize, seed: u64) -> Result<EdgeColoring> {
    check_k(k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let colors = (0..graph.edge_count()).map(|_| rng.gen_range(1..=k as u32)).collect();
    EdgeColoring::new(k, colors)
}

/// Greedy coloring by conditional expectations.
///
/// Edges are visited in `order`; each takes the color shared by the fewest
/// already-colored crossing partners, smallest color on ties. Every crossing
/// pair is charged when its second edge is colored, and the minimum over `k`
/// colors is at most the average, so the result has at most `crs(G)/k`
/// monochromatic crossing pairs.
pub fn derandomized_coloring(graph: &GeometricGraph, k: usize, order: &EdgeOrder) -> Result<EdgeColoring> {
    check_k(k)?;
    let partners = graph.crossing_set().partners(graph.edge_count());
    let order = order.resolve(&partners);
    check_permutation(&order, graph.edge_count())?;
    let mut colors = vec![0u32; graph.edge_count()];
    greedy_extend(&partners, k, &mut colors, &order);
    EdgeColoring::new(k, colors)
}

fn check_permutation(order: &[usize], m: usize) -> Result<()> {
    if order.len() != m {
        return Err(Error::EdgeOrder(format!("{} entries for {m} edges", order.len())));
    }
    let mut seen = vec![false; m];
    for &e in order {
        if e >= m || std::mem::replace(&mut seen[e], true) {
            return Err(Error::EdgeOrder(format!("edge {e} repeated or out of range")));
        }
    }
    Ok(())
}

/// Colors every uncolored edge of `order`; color 0 marks "not yet colored".
fn greedy_extend(partners: &[Vec<usize>], k: usize, colors: &mut [u32], order: &[usize]) {
    let mut tally = vec![0u64; k + 1];
    for &e in order {
        if colors[e] != 0 {
            continue;
        }
        tally.iter_mut().for_each(|t| *t = 0);
        for &f in &partners[e] {
            tally[colors[f] as usize] += 1;
        }
        let best = (1..=k).min_by_key(|&c| (tally[c], c)).expect("k >= 2");
        colors[e] = best as u32;
    }
}

/// Color `i` on every edge of bundle `i`; the rest greedily.
///
/// The greedy pass over `E'' = E \ E'` counts conflicts against both the
/// fixed bundle edges and the already-colored `E''` edges, so pairs within
/// `E''` and pairs between `E''` and `E'` contribute at most a `1/k` share.
pub fn bundle_coloring(graph: &GeometricGraph, bundles: &[Bundle], order: &EdgeOrder) -> Result<EdgeColoring> {
    let k = bundles.len();
    check_k(k)?;
    let m = graph.edge_count();
    let colors = bundle_colors(m, bundles)?;
    let partners = graph.crossing_set().partners(m);
    let mut colors = colors;
    let order = order.resolve(&partners);
    check_permutation(&order, m)?;
    greedy_extend(&partners, k, &mut colors, &order);
    EdgeColoring::new(k, colors)
}

/// Colors fixed by the bundles (0 for edges outside every bundle).
pub(crate) fn bundle_colors(edge_count: usize, bundles: &[Bundle]) -> Result<Vec<u32>> {
    let mut colors = vec![0u32; edge_count];
    for (i, b) in bundles.iter().enumerate() {
        for &e in &b.edges {
            if e >= edge_count {
                return Err(Error::Parameter(format!("bundle {i} names edge {e} of {edge_count}")));
            }
            if colors[e] != 0 {
                return Err(Error::EdgeInTwoBundles { edge: e, first: colors[e] as usize - 1, second: i });
            }
            colors[e] = i as u32 + 1;
        }
    }
    Ok(colors)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColoringStats {
    pub mono: u64,
    pub hetero: u64,
    pub total: u64,
    #[serde(with = "rational")]
    pub ratio: Rational,
    /// No crossings at all; `ratio` is then reported as 0.
    pub vacuous: bool,
}

impl ColoringStats {
    pub fn from_counts(mono: u64, total: u64) -> Self {
        let ratio = if total == 0 { Rational::zero() } else { ratio(mono, total) };
        ColoringStats { mono, hetero: total - mono, total, ratio, vacuous: total == 0 }
    }

    /// Whether `mono ≤ total / k`, decided exactly.
    pub fn within_average(&self, k: usize) -> bool {
        self.mono * k as u64 <= self.total
    }
}

pub fn coloring_stats(graph: &GeometricGraph, coloring: &EdgeColoring) -> Result<ColoringStats> {
    if coloring.len() != graph.edge_count() {
        return Err(Error::PartialColoring { colored: coloring.len(), edges: graph.edge_count() });
    }
    Ok(stats_for(&graph.crossing_set(), coloring))
}

pub fn stats_for(crossings: &CrossingSet, coloring: &EdgeColoring) -> ColoringStats {
    let mono = crossings.pairs.iter().filter(|&&(e, f)| coloring.color(e) == coloring.color(f)).count() as u64;
    ColoringStats::from_counts(mono, crossings.count)
}
