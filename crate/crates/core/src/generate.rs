//! Reproducible random instances in general position.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{find_collinear, Point, PointSet};
use crate::graph::GeometricGraph;
use crate::rational::{self, int, Rational};

pub const DEFAULT_RANGE: i64 = 1 << 20;
const RETRIES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    UniformSquare,
    ConvexPosition,
    PerturbedGrid,
    Clustered,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 4] =
        [GeneratorKind::UniformSquare, GeneratorKind::ConvexPosition, GeneratorKind::PerturbedGrid, GeneratorKind::Clustered];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::UniformSquare => "uniform-square",
            GeneratorKind::ConvexPosition => "convex-position",
            GeneratorKind::PerturbedGrid => "perturbed-grid",
            GeneratorKind::Clustered => "clustered",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GeneratorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown generator kind {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    #[serde(with = "rational")]
    pub density: Rational,
    pub seed: u64,
    /// Coordinates lie in `[-range, range]`.
    pub coordinate_range: i64,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, n: usize, density: Rational, seed: u64) -> Self {
        GeneratorSpec { kind, n, density, seed, coordinate_range: DEFAULT_RANGE }
    }
}

/// Number of edges for target density `d`: `⌈d·C(n,2)⌉`.
pub fn target_edge_count(n: usize, d: &Rational) -> usize {
    let pairs = int(n * n.saturating_sub(1) / 2);
    let x = d * pairs;
    let (q, r) = x.numer().div_rem(x.denom());
    let q = if r.is_zero() { q } else { q + BigInt::from(1) };
    q.to_usize().expect("edge count fits in usize")
}

/// Builds the instance described by `spec`.
///
/// Point sets are redrawn (up to a fixed retry budget) until no three points
/// are collinear; edges are a uniform sample of `⌈d·C(n,2)⌉` vertex pairs.
pub fn generate(spec: &GeneratorSpec) -> Result<GeometricGraph> {
    if spec.n < 4 {
        return Err(Error::TooFewVertices { need: 4, got: spec.n });
    }
    if spec.density <= Rational::zero() || spec.density > int(1) {
        return Err(Error::Parameter(format!("density {} is not in (0, 1]", spec.density)));
    }
    if spec.coordinate_range < 1 || spec.coordinate_range > i32::MAX as i64 {
        return Err(Error::Parameter(format!("coordinate range {} is out of bounds", spec.coordinate_range)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let points = general_position(spec, &mut rng)?;
    let n = spec.n;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let m = target_edge_count(n, &spec.density);
    let mut chosen: Vec<usize> = sample(&mut rng, pairs.len(), m).into_vec();
    chosen.sort_unstable();
    GeometricGraph::new(points, chosen.into_iter().map(|i| pairs[i]))
}

fn general_position(spec: &GeneratorSpec, rng: &mut ChaCha8Rng) -> Result<PointSet> {
    for _ in 0..RETRIES {
        let pts = match spec.kind {
            GeneratorKind::UniformSquare => uniform(spec.n, spec.coordinate_range, rng),
            GeneratorKind::ConvexPosition => convex(spec.n, spec.coordinate_range, rng),
            GeneratorKind::PerturbedGrid => grid(spec.n, spec.coordinate_range, rng),
            GeneratorKind::Clustered => clustered(spec.n, spec.coordinate_range, rng),
        };
        let Some(pts) = pts else { continue };
        if find_collinear(&pts).is_none() {
            if let Ok(set) = PointSet::new(pts) {
                return Ok(set);
            }
        }
    }
    Err(Error::Parameter(format!(
        "no {} point set in general position within {RETRIES} tries (range {})",
        spec.kind, spec.coordinate_range
    )))
}

fn point(x: i64, y: i64) -> Point {
    Point::new(x as i32, y as i32)
}

fn uniform(n: usize, range: i64, rng: &mut ChaCha8Rng) -> Option<Vec<Point>> {
    Some((0..n).map(|_| point(rng.gen_range(-range..=range), rng.gen_range(-range..=range))).collect())
}

/// Points on the parabola `y = x²`, scaled into range.
fn convex(n: usize, range: i64, rng: &mut ChaCha8Rng) -> Option<Vec<Point>> {
    let half = (range as f64).sqrt() as i64;
    if 2 * half + 1 < n as i64 {
        return None;
    }
    let xs = sample(rng, (2 * half + 1) as usize, n);
    Some(xs.into_iter().map(|i| { let x = i as i64 - half; point(x, x * x) }).collect())
}

/// A square lattice with each point jittered by less than half a cell.
fn grid(n: usize, range: i64, rng: &mut ChaCha8Rng) -> Option<Vec<Point>> {
    let side = (n as f64).sqrt().ceil() as i64;
    let cell = 2 * range / side.max(1);
    let jitter = cell / 4;
    if jitter < 1 {
        return None;
    }
    Some(
        (0..n as i64)
            .map(|i| {
                let (gx, gy) = (i % side, i / side);
                let x = -range + gx * cell + cell / 2 + rng.gen_range(-jitter..=jitter);
                let y = -range + gy * cell + cell / 2 + rng.gen_range(-jitter..=jitter);
                point(x, y)
            })
            .collect(),
    )
}

/// A few tight clusters with uniformly placed centers.
fn clustered(n: usize, range: i64, rng: &mut ChaCha8Rng) -> Option<Vec<Point>> {
    let clusters = ((n as f64).sqrt().round() as usize).clamp(1, 8);
    let spread = (range / 16).max(1);
    let centers: Vec<(i64, i64)> = (0..clusters)
        .map(|_| (rng.gen_range(-range + spread..=range - spread), rng.gen_range(-range + spread..=range - spread)))
        .collect();
    Some(
        (0..n)
            .map(|i| {
                let (cx, cy) = centers[i % clusters];
                point(cx + rng.gen_range(-spread..=spread), cy + rng.gen_range(-spread..=spread))
            })
            .collect(),
    )
}
