//! The bundle pipeline: balanced partition, regular box, same-type
//! refinement, transversal graph, pairwise-crossing search.

use num_traits::Zero;
use serde::Serialize;

use super::{
    dense_regular_boxes, find_pairwise_crossing_edges, random_balanced_partition, regular_box_partition,
    same_type_refine, threshold_graph, Bundle, RegularityConfig, SameTypeConfig, TupleBox, VertexTuplePartition,
};
use crate::certificate::{max_feasible_constants, strict_constants, verify_conditions, Constants};
use crate::error::{Error, Result, Stage};
use crate::graph::GeometricGraph;
use crate::rational::{self, dyadic_floor, int, ratio, Rational};

/// `min{1/8, d/(4−d) − d/4}` rounded down to a power of two.
pub fn default_epsilon(d: &Rational) -> Rational {
    let four = int(4);
    let slack = d / (&four - d) - d / &four;
    let cap = ratio(1, 8);
    dyadic_floor(if slack < cap { &slack } else { &cap })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleParams {
    /// Number of partition blocks; `None` tries `2k, 4k, 8k` in turn.
    pub r: Option<usize>,
    /// `None` uses [`default_epsilon`].
    pub epsilon: Option<Rational>,
    pub seed: u64,
    /// Partition seeds tried per `r` (`seed, seed + 1, …`).
    pub seeds_per_r: usize,
    /// Dense regular boxes tried per partition, best first.
    pub box_candidates: usize,
    pub regularity: RegularityConfig,
    pub same_type: SameTypeConfig,
}

impl Default for BundleParams {
    fn default() -> Self {
        BundleParams {
            r: None,
            epsilon: None,
            seed: 0,
            seeds_per_r: 3,
            box_candidates: 64,
            regularity: RegularityConfig::default(),
            same_type: SameTypeConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttemptFailure {
    pub r: usize,
    pub seed: u64,
    pub stage: Stage,
    pub detail: String,
}

/// Bundles plus the intermediate objects that produced them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BundleBuild {
    pub bundles: Vec<Bundle>,
    pub r: usize,
    pub seed: u64,
    #[serde(with = "rational")]
    pub epsilon: Rational,
    #[serde(with = "rational")]
    pub density: Rational,
    pub removed: Vec<usize>,
    pub box_count: usize,
    pub irregular_mass: u128,
    pub total_mass: u128,
    pub dense_box: TupleBox,
    #[serde(with = "rational")]
    pub box_density: Rational,
    pub refined: VertexTuplePartition,
    #[serde(with = "rational")]
    pub beta: Rational,
    /// One point per refined part.
    pub transversal: Vec<usize>,
    /// Part index pairs `(a, b)` of the pairwise-crossing transversal edges.
    pub crossing_parts: Vec<(usize, usize)>,
    pub constants: Constants,
    /// Earlier attempts that failed, in order.
    pub failures: Vec<AttemptFailure>,
}

/// Finds `k` bundles whose edges pairwise cross between bundles, verified
/// against conditions (a)–(d) with the largest constants they support.
///
/// Per attempt: random balanced partition into `r` blocks, witness-driven
/// ε-regular box partition, a regular box of density at least `d/2`,
/// same-type refinement of its factors, the transversal graph joining parts
/// `i, j` when `d(W_i, W_j) ≥ d/(4 − d)`, and a search for `k` pairwise
/// crossing transversal edges. Failing attempts move on to the next box
/// candidate, seed, and `r`; the last failure is reported with its stage.
pub fn build_bundles(graph: &GeometricGraph, k: usize, params: &BundleParams) -> Result<BundleBuild> {
    if k < 2 {
        return Err(Error::ColorCount(k));
    }
    let d = graph.density()?;
    if d.is_zero() {
        return Err(Error::Parameter("graph has no edges".into()));
    }
    let eps = match &params.epsilon {
        Some(e) => e.clone(),
        None => default_epsilon(&d),
    };
    let schedule: Vec<usize> = match params.r {
        Some(r) => vec![r],
        None => [2 * k, 4 * k, 8 * k].into_iter().filter(|&r| r <= graph.vertex_count()).collect(),
    };
    if schedule.is_empty() {
        return Err(Error::pipeline(Stage::Partition, format!("need at least {} vertices for r = 2k", 2 * k)));
    }
    let mut failures = Vec::new();
    for &r in &schedule {
        for attempt in 0..params.seeds_per_r.max(1) {
            let seed = params.seed.wrapping_add(attempt as u64);
            match attempt_build(graph, k, r, seed, &d, &eps, params, &mut failures) {
                Ok(mut build) => {
                    build.failures = failures;
                    return Ok(build);
                }
                Err((stage, detail)) => failures.push(AttemptFailure { r, seed, stage, detail }),
            }
        }
    }
    let last = failures.pop().expect("at least one attempt");
    Err(Error::pipeline(
        last.stage,
        format!("{} (r = {}, seed = {}; {} earlier attempts failed)", last.detail, last.r, last.seed, failures.len()),
    ))
}

type StageResult<T> = std::result::Result<T, (Stage, String)>;

fn stage<T>(stage: Stage, r: Result<T>) -> StageResult<T> {
    r.map_err(|e| (stage, e.to_string()))
}

#[allow(clippy::too_many_arguments)]
fn attempt_build(
    graph: &GeometricGraph,
    k: usize,
    r: usize,
    seed: u64,
    d: &Rational,
    eps: &Rational,
    params: &BundleParams,
    failures: &mut Vec<AttemptFailure>,
) -> StageResult<BundleBuild> {
    let partition = stage(Stage::Partition, random_balanced_partition(graph, r, seed))?;
    let regularity = RegularityConfig { seed, ..params.regularity };
    let boxes = stage(Stage::Regularity, regular_box_partition(graph, &partition.parts, eps, &regularity))?;
    if !boxes.converged {
        return Err((
            Stage::Regularity,
            format!("irregular mass {} of {} after {} splits", boxes.irregular_mass, boxes.total_mass, boxes.splits),
        ));
    }
    let candidates = stage(Stage::DenseBox, dense_regular_boxes(graph, &boxes, d))?;
    if candidates.is_empty() {
        return Err((Stage::DenseBox, format!("no regular box of density >= {}", d / int(2))));
    }
    let delta = d / (int(4) - d);
    let mut last = None;
    for (idx, density) in candidates.into_iter().take(params.box_candidates.max(1)) {
        let w = &boxes.boxes[idx];
        match bundles_from_box(graph, k, w, &delta, params) {
            Ok((bundles, refined, beta, transversal, crossing_parts, constants)) => {
                return Ok(BundleBuild {
                    bundles,
                    r,
                    seed,
                    epsilon: eps.clone(),
                    density: d.clone(),
                    removed: partition.removed,
                    box_count: boxes.boxes.len(),
                    irregular_mass: boxes.irregular_mass,
                    total_mass: boxes.total_mass,
                    dense_box: w.clone(),
                    box_density: density,
                    refined,
                    beta,
                    transversal,
                    crossing_parts,
                    constants,
                    failures: Vec::new(),
                });
            }
            Err(e) => {
                if let Some((s, detail)) = last.replace(e) {
                    failures.push(AttemptFailure { r, seed, stage: s, detail });
                }
            }
        }
    }
    Err(last.expect("at least one candidate"))
}

type FromBox = (Vec<Bundle>, VertexTuplePartition, Rational, Vec<usize>, Vec<(usize, usize)>, Constants);

fn bundles_from_box(
    graph: &GeometricGraph,
    k: usize,
    w: &TupleBox,
    delta: &Rational,
    params: &BundleParams,
) -> StageResult<FromBox> {
    let parts = stage(Stage::SameType, VertexTuplePartition::new(w.factors.clone()))?;
    let refinement = stage(Stage::SameType, same_type_refine(graph.points(), &parts, &params.same_type))?;
    let refined = refinement.partition;

    let adjacency = stage(Stage::TransversalGraph, threshold_graph(graph, w, delta))?;
    let transversal: Vec<usize> = refined.parts().iter().map(|p| p[0]).collect();
    let points = graph.points().subset(&transversal);
    let g_prime = stage(Stage::TransversalGraph, GeometricGraph::new(points, adjacency.edges.iter().copied()))?;

    let family = stage(Stage::CrossingSearch, find_pairwise_crossing_edges(&g_prime, k))?
        .ok_or_else(|| (Stage::CrossingSearch, format!("no {k} pairwise crossing edges among {} transversal edges", g_prime.edge_count())))?;
    let crossing_parts: Vec<(usize, usize)> = family.iter().map(|&e| g_prime.edge(e)).collect();

    let mut bundles = Vec::with_capacity(k);
    for &(a, b) in &crossing_parts {
        let bundle = stage(Stage::Bundles, Bundle::new(graph, refined.parts()[a].clone(), refined.parts()[b].clone()))?;
        if bundle.edges.is_empty() {
            return Err((Stage::Bundles, format!("bundle on parts ({a}, {b}) has no edges")));
        }
        bundles.push(bundle);
    }
    let constants = strict_constants(&stage(Stage::Constants, max_feasible_constants(graph, &bundles))?, graph.vertex_count());
    let report = stage(Stage::Verification, verify_conditions(graph, &bundles, &constants))?;
    if !report.passed() {
        return Err((Stage::Verification, format!("{report:?}")));
    }
    Ok((bundles, refined, refinement.beta, transversal, crossing_parts, constants))
}
