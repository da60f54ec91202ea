//! ε-regular pairs and witness-driven box partitions.
//!
//! Deciding ε-regularity is co-NP-hard in general, so verdicts are
//! tri-state. Small pairs are decided exactly; large pairs are only
//! falsified by sampling and otherwise reported as [`PairVerdict::Unknown`].

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::box_density;
use crate::error::{Error, Result, Stage};
use crate::graph::GeometricGraph;
use crate::rational::{self, int, ratio, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegularityConfig {
    /// Pairs with `|A| + |B|` at most this are decided exhaustively.
    pub exhaustive_cap: usize,
    /// Random subsets tried per pair above the cap.
    pub sample_budget: usize,
    pub seed: u64,
    /// Maximum number of box splits in [`regular_box_partition`].
    pub split_cap: usize,
}

impl Default for RegularityConfig {
    fn default() -> Self {
        RegularityConfig { exhaustive_cap: 24, sample_budget: 2_000, seed: 0, split_cap: 200_000 }
    }
}

/// `X ⊆ A`, `Y ⊆ B` with `|d(X, Y) − d(A, B)| > ε`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrregularityWitness {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    #[serde(with = "rational")]
    pub sub_density: Rational,
    #[serde(with = "rational")]
    pub pair_density: Rational,
}

impl IrregularityWitness {
    pub fn gap(&self) -> Rational {
        let d = &self.sub_density - &self.pair_density;
        if d < Rational::zero() {
            -d
        } else {
            d
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum PairVerdict {
    /// Decided over every admissible `X`, `Y`.
    Regular,
    NotRegular(IrregularityWitness),
    /// Sampling found no witness.
    Unknown { samples: usize },
}

fn check_epsilon(eps: &Rational) -> Result<()> {
    if eps <= &Rational::zero() || eps >= &Rational::one() {
        return Err(Error::Epsilon(eps.to_string()));
    }
    Ok(())
}

/// Exact integer form of `ε = p / q`.
#[derive(Clone, Copy)]
struct Eps {
    p: i128,
    q: i128,
}

impl Eps {
    fn new(eps: &Rational) -> Self {
        use num_traits::ToPrimitive;
        Eps { p: eps.numer().to_i128().expect("epsilon numerator"), q: eps.denom().to_i128().expect("epsilon denominator") }
    }

    /// `size ≥ ε · total`.
    fn admits(self, size: usize, total: usize) -> bool {
        size as i128 * self.q >= self.p * total as i128
    }

    fn min_size(self, total: usize) -> usize {
        (0..=total).find(|&s| self.admits(s, total)).unwrap_or(total)
    }
}

/// Scans every `Y` for a fixed `X` at once: for each admissible `|Y|` only the
/// `|Y|` lowest and highest `X`-degrees can realise the extreme sub-densities.
struct PairScanner<'a> {
    graph: &'a GeometricGraph,
    /// Side enumerated as `X`.
    large: &'a [usize],
    /// `|E(A, B)|`, `|A||B|`.
    edges: i128,
    area: i128,
    eps: Eps,
    large_min: usize,
}

impl<'a> PairScanner<'a> {
    fn new(graph: &'a GeometricGraph, small: &'a [usize], large: &'a [usize], eps: Eps) -> Self {
        let edges = graph.count_between(small, large) as i128;
        let area = (small.len() * large.len()) as i128;
        PairScanner { graph, large, edges, area, eps, large_min: eps.min_size(large.len()) }
    }

    /// A violating `Y ⊆ large` for this `X`, if any.
    fn scan(&self, x: &[usize]) -> Option<(Vec<usize>, i128)> {
        let mut deg: Vec<(i128, usize)> = self
            .large
            .iter()
            .map(|&v| (x.iter().filter(|&&u| self.graph.has_edge(u, v)).count() as i128, v))
            .collect();
        deg.sort_unstable();
        let xs = x.len() as i128;
        let l = deg.len();
        let mut low = 0i128;
        let mut high = 0i128;
        for s in 1..=l {
            low += deg[s - 1].0;
            high += deg[l - s].0;
            if s < self.large_min {
                continue;
            }
            let s_i = s as i128;
            for (sum, from_top) in [(high, true), (low, false)] {
                // |sum / (|X| s) − e / area| > p / q
                let lhs = (sum * self.area - self.edges * xs * s_i).abs() * self.eps.q;
                let rhs = self.eps.p * xs * s_i * self.area;
                if lhs > rhs {
                    let y = if from_top { deg[l - s..].iter() } else { deg[..s].iter() };
                    let mut y: Vec<usize> = y.map(|&(_, v)| v).collect();
                    y.sort_unstable();
                    return Some((y, sum));
                }
            }
        }
        None
    }

    fn witness(&self, x: Vec<usize>, y: Vec<usize>, sum: i128, swapped: bool) -> IrregularityWitness {
        let sub_density = ratio(sum, (x.len() * y.len()) as i128);
        let pair_density = ratio(self.edges, self.area);
        let (x, y) = if swapped { (y, x) } else { (x, y) };
        IrregularityWitness { x, y, sub_density, pair_density }
    }
}

/// Decides whether `(A, B)` is ε-regular.
///
/// Exhaustive when `|A| + |B| ≤ config.exhaustive_cap`: all admissible `X` of
/// the smaller side are enumerated and, for each, the extreme `Y` of every
/// admissible size is checked, which covers every `Y`. Otherwise a sample of
/// `X` sets (neighbourhood slices first, then random ones) is tried.
pub fn epsilon_regular_pair(
    graph: &GeometricGraph,
    a: &[usize],
    b: &[usize],
    eps: &Rational,
    config: &RegularityConfig,
) -> Result<PairVerdict> {
    check_epsilon(eps)?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    // Validates disjointness.
    graph.bipartite_edges(a, b)?;
    let swapped = a.len() > b.len();
    let (small, large) = if swapped { (b, a) } else { (a, b) };
    let e = Eps::new(eps);
    let scanner = PairScanner::new(graph, small, large, e);
    let small_min = e.min_size(small.len());

    if a.len() + b.len() <= config.exhaustive_cap {
        let s = small.len();
        for mask in 1u64..(1u64 << s) {
            if (mask.count_ones() as usize) < small_min {
                continue;
            }
            let x: Vec<usize> = (0..s).filter(|i| mask >> i & 1 == 1).map(|i| small[i]).collect();
            if let Some((y, sum)) = scanner.scan(&x) {
                return Ok(PairVerdict::NotRegular(scanner.witness(x, y, sum, swapped)));
            }
        }
        return Ok(PairVerdict::Regular);
    }

    let mut samples = 0;
    for &v in large {
        let inside: Vec<usize> = small.iter().copied().filter(|&u| graph.has_edge(u, v)).collect();
        let outside: Vec<usize> = small.iter().copied().filter(|&u| !graph.has_edge(u, v)).collect();
        for x in [inside, outside] {
            if samples >= config.sample_budget || x.len() < small_min.max(1) {
                continue;
            }
            samples += 1;
            if let Some((y, sum)) = scanner.scan(&x) {
                return Ok(PairVerdict::NotRegular(scanner.witness(x, y, sum, swapped)));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    while samples < config.sample_budget {
        samples += 1;
        let size = rng.gen_range(small_min.max(1)..=small.len());
        let x: Vec<usize> = rand::seq::index::sample(&mut rng, small.len(), size).into_iter().map(|i| small[i]).collect();
        if let Some((y, sum)) = scanner.scan(&x) {
            return Ok(PairVerdict::NotRegular(scanner.witness(x, y, sum, swapped)));
        }
    }
    Ok(PairVerdict::Unknown { samples })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regularity {
    Regular,
    NotRegular,
    Unknown,
}

/// Witness that factors `i` and `j` of a box form an irregular pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoxWitness {
    pub i: usize,
    pub j: usize,
    pub pair: IrregularityWitness,
}

/// A product `W_1 × ⋯ × W_r` of vertex sets, with its regularity flag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TupleBox {
    pub factors: Vec<Vec<usize>>,
    pub regular: Regularity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<BoxWitness>,
}

impl TupleBox {
    /// An unflagged box ([`Regularity::Unknown`]).
    pub fn new(factors: Vec<Vec<usize>>) -> Self {
        TupleBox { factors, regular: Regularity::Unknown, witness: None }
    }

    /// Number of tuples in the box.
    pub fn mass(&self) -> u128 {
        self.factors.iter().map(|f| f.len() as u128).product()
    }

    /// Flags the box by checking every factor pair; stops at the first irregular pair.
    pub fn flag(&mut self, graph: &GeometricGraph, eps: &Rational, config: &RegularityConfig) -> Result<()> {
        let r = self.factors.len();
        let mut unknown = false;
        for i in 0..r {
            for j in i + 1..r {
                match epsilon_regular_pair(graph, &self.factors[i], &self.factors[j], eps, config)? {
                    PairVerdict::Regular => {}
                    PairVerdict::Unknown { .. } => unknown = true,
                    PairVerdict::NotRegular(pair) => {
                        self.regular = Regularity::NotRegular;
                        self.witness = Some(BoxWitness { i, j, pair });
                        return Ok(());
                    }
                }
            }
        }
        self.regular = if unknown { Regularity::Unknown } else { Regularity::Regular };
        self.witness = None;
        Ok(())
    }

    fn split(&self) -> Vec<TupleBox> {
        let w = self.witness.as_ref().expect("split needs a witness");
        let halves = |factor: &[usize], keep: &[usize]| -> Vec<Vec<usize>> {
            let rest: Vec<usize> = factor.iter().copied().filter(|v| !keep.contains(v)).collect();
            [keep.to_vec(), rest].into_iter().filter(|h| !h.is_empty()).collect()
        };
        let mut children = Vec::new();
        for xi in halves(&self.factors[w.i], &w.pair.x) {
            for yj in halves(&self.factors[w.j], &w.pair.y) {
                let mut factors = self.factors.clone();
                factors[w.i] = xi.clone();
                factors[w.j] = yj;
                children.push(TupleBox::new(factors));
            }
        }
        children
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoxPartition {
    pub boxes: Vec<TupleBox>,
    #[serde(with = "rational")]
    pub epsilon: Rational,
    /// Part size `m`.
    pub part_size: usize,
    /// `m^r`.
    pub total_mass: u128,
    /// Tuples lying in boxes flagged not ε-regular.
    pub irregular_mass: u128,
    /// Tuples lying in boxes whose regularity was only sampled.
    pub unknown_mass: u128,
    pub splits: usize,
    /// Whether `irregular_mass ≤ ε · m^r` was reached.
    pub converged: bool,
}

impl BoxPartition {
    fn within_budget(eps: &Rational, irregular: u128, total: u128) -> bool {
        int(irregular) <= eps * int(total)
    }
}

/// Refines `V_1 × ⋯ × V_r` into boxes until at most `ε m^r` tuples lie in
/// boxes flagged not ε-regular.
///
/// Starts from the single box. While over budget, the irregular box of
/// largest mass is split along its witness: factor `W_i` into `X` and
/// `W_i \ X`, factor `W_j` into `Y` and `W_j \ Y`. Children are re-flagged.
/// Singleton factors always form regular pairs, so splitting terminates;
/// `config.split_cap` bounds the work, and hitting it clears `converged`.
pub fn regular_box_partition(
    graph: &GeometricGraph,
    parts: &[Vec<usize>],
    eps: &Rational,
    config: &RegularityConfig,
) -> Result<BoxPartition> {
    check_epsilon(eps)?;
    if parts.len() < 2 {
        return Err(Error::TooFewVertices { need: 2, got: parts.len() });
    }
    let m = parts[0].len();
    if m == 0 || parts.iter().any(|p| p.len() != m) {
        return Err(Error::Parameter("parts must be nonempty and of equal size".into()));
    }
    super::VertexTuplePartition::within(parts.to_vec(), graph.vertex_count())?;

    let mut root = TupleBox::new(parts.to_vec());
    root.flag(graph, eps, config)?;
    let total_mass = root.mass();
    let mut boxes = vec![root];
    let mut splits = 0;
    let mass_of = |boxes: &[TupleBox], flag: Regularity| -> u128 {
        boxes.iter().filter(|b| b.regular == flag).map(TupleBox::mass).sum()
    };
    let mut irregular = mass_of(&boxes, Regularity::NotRegular);
    while !BoxPartition::within_budget(eps, irregular, total_mass) && splits < config.split_cap {
        let (idx, _) = boxes
            .iter()
            .enumerate()
            .filter(|(_, b)| b.regular == Regularity::NotRegular)
            .max_by_key(|(i, b)| (b.mass(), std::cmp::Reverse(*i)))
            .expect("irregular mass implies an irregular box");
        let parent = boxes.swap_remove(idx);
        irregular -= parent.mass();
        for mut child in parent.split() {
            child.flag(graph, eps, config)?;
            if child.regular == Regularity::NotRegular {
                irregular += child.mass();
            }
            boxes.push(child);
        }
        splits += 1;
    }
    let converged = BoxPartition::within_budget(eps, irregular, total_mass);
    let unknown_mass = mass_of(&boxes, Regularity::Unknown);
    Ok(BoxPartition {
        boxes,
        epsilon: eps.clone(),
        part_size: m,
        total_mass,
        irregular_mass: irregular,
        unknown_mass,
        splits,
        converged,
    })
}

/// Regular boxes with density at least `d / 2`, best first: larger mass,
/// then higher density, then earlier position.
pub fn dense_regular_boxes(graph: &GeometricGraph, partition: &BoxPartition, d: &Rational) -> Result<Vec<(usize, Rational)>> {
    let half = d / int(2);
    let mut found = Vec::new();
    for (i, b) in partition.boxes.iter().enumerate() {
        if b.regular != Regularity::Regular {
            continue;
        }
        let density = box_density(graph, b)?;
        if density >= half {
            found.push((i, density));
        }
    }
    found.sort_by(|(i, da), (j, db)| {
        let (ma, mb) = (partition.boxes[*i].mass(), partition.boxes[*j].mass());
        mb.cmp(&ma).then_with(|| db.cmp(da)).then_with(|| i.cmp(j))
    });
    Ok(found)
}

/// The best regular box of density at least `d / 2`.
pub fn select_dense_regular_box(graph: &GeometricGraph, partition: &BoxPartition, d: &Rational) -> Result<TupleBox> {
    if let Some(&(i, _)) = dense_regular_boxes(graph, partition, d)?.first() {
        return Ok(partition.boxes[i].clone());
    }
    let mut best: Option<(Rational, usize)> = None;
    for (i, b) in partition.boxes.iter().enumerate() {
        let density = box_density(graph, b)?;
        if best.as_ref().is_none_or(|(bd, _)| density > *bd) {
            best = Some((density, i));
        }
    }
    let detail = match best {
        Some((density, i)) => format!(
            "no regular box reaches density {}; densest box #{i} ({:?}) has density {density}",
            d / int(2),
            partition.boxes[i].regular
        ),
        None => "partition has no boxes".to_string(),
    };
    Err(Error::pipeline(Stage::DenseBox, detail))
}
