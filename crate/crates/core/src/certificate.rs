//! Exact certificates for the bundle coloring.
//!
//! Given `k` bundles `(Y_i, Z_i)` the instance supports constants
//! `c1, c2, c3` when
//!
//! * (a) every `|Y_i|, |Z_i| ≥ c1·n`,
//! * (b) every `|E(Y_i, Z_i)| ≥ c2·n²`,
//! * (c) every `Y_i–Z_i` edge crosses every `Y_j–Z_j` edge for `i ≠ j`,
//! * (d) the crossing pairs `s_i` inside bundle `i` number at most `(c2²/2 − c3)·n⁴`,
//!
//! with `0 < c3 < c2²/2`. Coloring bundle `i` with color `i` then has
//! monochromatic ratio at most `1/k − c'` on the bundle edges `E'`, where
//! `c' = (c3 − c3/k) / (k·c2²/2 − c3)`, and coloring the remaining edges by
//! conditional expectations lowers the whole graph's ratio to at most
//! `1/k − c` with `c = c' · crs(G') / (crs(G') + C1 + C2)`.
//!
//! Here the constants are measured from the instance rather than fixed in
//! advance, and every inequality is decided in exact rational arithmetic.

use num_traits::Zero;
use serde::Serialize;

use crate::coloring::{bundle_coloring, stats_for, ColoringStats, EdgeColoring, EdgeOrder};
use crate::error::{Error, Result, Stage};
use crate::graph::{CrossingSet, GeometricGraph};
use crate::rational::{self, int, ratio, Rational};
use crate::structure::{build_bundles, Bundle, BundleBuild, BundleParams};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Constants {
    #[serde(with = "rational")]
    pub c1: Rational,
    #[serde(with = "rational")]
    pub c2: Rational,
    #[serde(with = "rational")]
    pub c3: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub holds: bool,
    pub detail: String,
}

impl ConditionCheck {
    fn new(holds: bool, detail: String) -> Self {
        ConditionCheck { holds, detail }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub n: usize,
    pub k: usize,
    pub sizes: ConditionCheck,
    pub edge_mass: ConditionCheck,
    pub cross: ConditionCheck,
    pub inner_crossings: ConditionCheck,
    /// `s_i`: crossing pairs among the edges of bundle `i`.
    pub s: Vec<u64>,
    /// Non-crossing inter-bundle edge pair, if condition (c) failed.
    pub cross_witness: Option<(usize, usize)>,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.sizes.holds && self.edge_mass.holds && self.cross.holds && self.inner_crossings.holds
    }
}

fn check_bundles(graph: &GeometricGraph, bundles: &[Bundle]) -> Result<()> {
    if bundles.len() < 2 {
        return Err(Error::ColorCount(bundles.len()));
    }
    crate::coloring::bundle_colors(graph.edge_count(), bundles)?;
    for b in bundles {
        b.validate(graph)?;
    }
    Ok(())
}

/// Crossing pairs among the given edges.
fn inner_crossings(graph: &GeometricGraph, edges: &[usize]) -> u64 {
    let mut s = 0;
    for (i, &e) in edges.iter().enumerate() {
        for &f in &edges[i + 1..] {
            if graph.crosses(e, f) {
                s += 1;
            }
        }
    }
    s
}

/// Checks conditions (a)–(d) exactly for the given constants.
pub fn verify_conditions(graph: &GeometricGraph, bundles: &[Bundle], constants: &Constants) -> Result<ConditionReport> {
    check_bundles(graph, bundles)?;
    let n = graph.vertex_count();
    let k = bundles.len();
    let Constants { c1, c2, c3 } = constants;
    let n1 = int(n as u64);
    let n2 = &n1 * &n1;
    let n4 = &n2 * &n2;

    let min_side = bundles.iter().map(|b| b.y.len().min(b.z.len())).min().unwrap_or(0);
    let sizes = ConditionCheck::new(
        int(min_side as u64) >= c1 * &n1,
        format!("smallest side {min_side} vs c1*n = {}", c1 * &n1),
    );

    let min_edges = bundles.iter().map(|b| b.edges.len()).min().unwrap_or(0);
    let edge_mass = ConditionCheck::new(
        int(min_edges as u64) >= c2 * &n2,
        format!("fewest bundle edges {min_edges} vs c2*n^2 = {}", c2 * &n2),
    );

    let mut cross_witness = None;
    'outer: for i in 0..k {
        for j in i + 1..k {
            for &e in &bundles[i].edges {
                for &f in &bundles[j].edges {
                    if !graph.crosses(e, f) {
                        cross_witness = Some((e, f));
                        break 'outer;
                    }
                }
            }
        }
    }
    let cross = ConditionCheck::new(
        cross_witness.is_none(),
        match cross_witness {
            None => "every inter-bundle edge pair crosses".to_string(),
            Some((e, f)) => format!("edges {e} and {f} of different bundles do not cross"),
        },
    );

    let s: Vec<u64> = bundles.iter().map(|b| inner_crossings(graph, &b.edges)).collect();
    let cap = (c2 * c2 / int(2) - c3) * &n4;
    let max_s = s.iter().copied().max().unwrap_or(0);
    let gap_positive = c3 > &Rational::zero() && c3 < &(c2 * c2 / int(2));
    let inner_crossings = ConditionCheck::new(
        gap_positive && int(max_s) <= cap,
        format!("largest s_i {max_s} vs (c2^2/2 - c3)*n^4 = {cap}; 0 < c3 < c2^2/2: {gap_positive}"),
    );

    Ok(ConditionReport { n, k, sizes, edge_mass, cross, inner_crossings, s, cross_witness })
}

/// Largest constants the bundles support:
/// `c1 = min min(|Y_i|, |Z_i|)/n`, `c2 = min |E(Y_i,Z_i)|/n²`, `c3 = c2²/2 − max s_i/n⁴`.
pub fn max_feasible_constants(graph: &GeometricGraph, bundles: &[Bundle]) -> Result<Constants> {
    check_bundles(graph, bundles)?;
    let n = graph.vertex_count() as u64;
    let min_side = bundles.iter().map(|b| b.y.len().min(b.z.len())).min().unwrap_or(0) as u64;
    let min_edges = bundles.iter().map(|b| b.edges.len()).min().unwrap_or(0) as u64;
    let max_s = bundles.iter().map(|b| inner_crossings(graph, &b.edges)).max().unwrap_or(0);
    let c1 = ratio(min_side, n);
    let c2 = ratio(min_edges, n * n);
    let c3 = &c2 * &c2 / int(2) - ratio(max_s, n.pow(4));
    if c3 <= Rational::zero() {
        return Err(Error::Certificate(format!(
            "no positive gap: largest s_i = {max_s} reaches c2^2 n^4 / 2 = {}",
            &c2 * &c2 / int(2) * int(n.pow(4))
        )));
    }
    Ok(Constants { c1, c2, c3 })
}

/// Lowers `c3` from `c2²/2` to `(c2²/2)(1 − 1/n⁴)` when no bundle has inner
/// crossings, so that `c3 < c2²/2` holds strictly. Condition (d) still holds
/// because every `s_i` is zero. Other constants are returned unchanged.
pub fn strict_constants(constants: &Constants, n: usize) -> Constants {
    let half = &constants.c2 * &constants.c2 / int(2);
    let mut out = constants.clone();
    if out.c3 >= half {
        out.c3 = &half - &half / int((n as u64).pow(4));
    }
    out
}

/// `c' = (c3 − c3/k) / (k·c2²/2 − c3)`.
pub fn c_prime(k: usize, c2: &Rational, c3: &Rational) -> Rational {
    let kq = int(k as u64);
    (c3 - c3 / &kq) / (&kq * c2 * c2 / int(2) - c3)
}

/// The bound on the bundle edges' own ratio in its unsimplified form
/// `(c2²/2 − c3) / (k·(c2²/2 − c3/k))`, which equals `1/k − c'`.
pub fn bundle_ratio_bound(k: usize, c2: &Rational, c3: &Rational) -> Rational {
    let kq = int(k as u64);
    let half = c2 * c2 / int(2);
    (&half - c3) / (&kq * (&half - c3 / &kq))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub k: usize,
    pub n: usize,
    #[serde(with = "rational")]
    pub c1: Rational,
    #[serde(with = "rational")]
    pub c2: Rational,
    #[serde(with = "rational")]
    pub c3: Rational,
    pub s: Vec<u64>,
    /// Crossing pairs among bundle edges.
    #[serde(rename = "crs_Gprime")]
    pub crs_gprime: u64,
    /// Crossing pairs among the remaining edges.
    #[serde(rename = "C1")]
    pub rest_pairs: u64,
    /// Crossing pairs with one bundle edge and one remaining edge.
    #[serde(rename = "C2")]
    pub mixed_pairs: u64,
    #[serde(with = "rational")]
    pub c_prime: Rational,
    #[serde(with = "rational")]
    pub c: Rational,
    #[serde(with = "rational")]
    pub bound: Rational,
    #[serde(with = "rational")]
    pub achieved_ratio: Rational,
    pub within_bound: bool,
}

impl Certificate {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        k: usize,
        n: usize,
        constants: &Constants,
        s: Vec<u64>,
        crs_gprime: u64,
        rest_pairs: u64,
        mixed_pairs: u64,
        achieved_ratio: Rational,
    ) -> Result<Self> {
        let mut cert = Certificate {
            k,
            n,
            c1: constants.c1.clone(),
            c2: constants.c2.clone(),
            c3: constants.c3.clone(),
            s,
            crs_gprime,
            rest_pairs,
            mixed_pairs,
            c_prime: Rational::zero(),
            c: Rational::zero(),
            bound: Rational::zero(),
            achieved_ratio,
            within_bound: false,
        };
        cert.bound = bound_from_certificate(&cert)?;
        cert.c_prime = c_prime(k, &cert.c2, &cert.c3);
        cert.c = ratio(1, k as u64) - &cert.bound;
        cert.within_bound = cert.achieved_ratio <= cert.bound;
        Ok(cert)
    }

    pub fn constants(&self) -> Constants {
        Constants { c1: self.c1.clone(), c2: self.c2.clone(), c3: self.c3.clone() }
    }
}

/// Recomputes `1/k − c` from the certificate's measured quantities,
/// rejecting any violated hypothesis.
pub fn bound_from_certificate(cert: &Certificate) -> Result<Rational> {
    if cert.k < 2 {
        return Err(Error::Certificate(format!("k = {} < 2", cert.k)));
    }
    let half = &cert.c2 * &cert.c2 / int(2);
    if cert.c3 <= Rational::zero() {
        return Err(Error::Certificate(format!("c3 = {} must be positive", cert.c3)));
    }
    if cert.c3 >= half {
        return Err(Error::Certificate(format!("c3 = {} is not below c2^2/2 = {half}", cert.c3)));
    }
    let kq = ratio(1, cert.k as u64);
    let cp = c_prime(cert.k, &cert.c2, &cert.c3);
    if cp <= Rational::zero() {
        return Err(Error::Certificate(format!("c' = {cp} must be positive")));
    }
    let unsimplified = bundle_ratio_bound(cert.k, &cert.c2, &cert.c3);
    if unsimplified != &kq - &cp {
        return Err(Error::Certificate(format!("bundle bound {unsimplified} disagrees with 1/k - c' = {}", &kq - &cp)));
    }
    if cert.crs_gprime == 0 {
        return Err(Error::Certificate("bundle edges have no crossings, so c = 0".into()));
    }
    let total = cert.crs_gprime + cert.rest_pairs + cert.mixed_pairs;
    let c = &cp * ratio(cert.crs_gprime, total);
    Ok(kq - c)
}

/// Everything produced by [`end_to_end`].
#[derive(Debug, Clone, Serialize)]
pub struct PipelineOutcome {
    #[serde(skip)]
    pub coloring: EdgeColoring,
    pub certificate: Certificate,
    pub stats: ColoringStats,
    pub conditions: ConditionReport,
    pub build: BundleBuild,
    /// Monochromatic crossing pairs among bundle edges, `Σ s_i`.
    pub bundle_mono: u64,
}

/// Splits all crossing pairs into (both in `E'`, both in `E''`, mixed).
pub fn classify_crossings(crossings: &CrossingSet, in_bundle: &[bool]) -> (u64, u64, u64) {
    let (mut inner, mut rest, mut mixed) = (0, 0, 0);
    for &(e, f) in &crossings.pairs {
        match (in_bundle[e], in_bundle[f]) {
            (true, true) => inner += 1,
            (false, false) => rest += 1,
            _ => mixed += 1,
        }
    }
    (inner, rest, mixed)
}

/// Bundles, constants, verification, bundle coloring and its certificate.
///
/// The returned coloring always satisfies `mono ≤ crs(G)/k`; the certificate
/// records whether it also meets the sharper bound `1/k − c`.
pub fn end_to_end(graph: &GeometricGraph, k: usize, params: &BundleParams, order: &EdgeOrder) -> Result<PipelineOutcome> {
    let crossings = graph.crossing_set();
    if crossings.count == 0 {
        return Err(Error::Vacuous);
    }
    let build = build_bundles(graph, k, params)?;
    let bundles = &build.bundles;
    let constants = max_feasible_constants(graph, bundles)
        .map(|c| strict_constants(&c, graph.vertex_count()))
        .map_err(|e| Error::pipeline(Stage::Constants, e.to_string()))?;
    let conditions = verify_conditions(graph, bundles, &constants)?;
    if !conditions.passed() {
        return Err(Error::pipeline(Stage::Verification, format!("{conditions:?}")));
    }
    let coloring = bundle_coloring(graph, bundles, order).map_err(|e| Error::pipeline(Stage::Coloring, e.to_string()))?;
    let stats = stats_for(&crossings, &coloring);

    let mut in_bundle = vec![false; graph.edge_count()];
    for b in bundles {
        for &e in &b.edges {
            in_bundle[e] = true;
        }
    }
    let (inner, rest, mixed) = classify_crossings(&crossings, &in_bundle);
    let bundle_mono: u64 = conditions.s.iter().sum();
    let certificate =
        Certificate::new(k, graph.vertex_count(), &constants, conditions.s.clone(), inner, rest, mixed, stats.ratio.clone())
            .map_err(|e| Error::pipeline(Stage::Constants, e.to_string()))?;
    if !stats.within_average(k) {
        return Err(Error::pipeline(
            Stage::Coloring,
            format!("{} monochromatic pairs exceed crs/k = {}/{k}", stats.mono, stats.total),
        ));
    }
    Ok(PipelineOutcome { coloring, certificate, stats, conditions, build, bundle_mono })
}

/// Ratio of the greedy guarantee for the bundle coloring,
/// `(Σ s_i + (C1 + C2)/k) / crs(G)`.
pub fn bundle_coloring_guarantee(cert: &Certificate) -> Rational {
    let total = cert.crs_gprime + cert.rest_pairs + cert.mixed_pairs;
    if total == 0 {
        return Rational::zero();
    }
    let inner: u64 = cert.s.iter().sum();
    (int(inner) + ratio(cert.rest_pairs + cert.mixed_pairs, cert.k as u64)) / int(total)
}

impl Default for Constants {
    fn default() -> Self {
        Constants { c1: Rational::zero(), c2: Rational::zero(), c3: Rational::zero() }
    }
}

impl Constants {
    pub fn is_positive(&self) -> bool {
        self.c1 > Rational::zero() && self.c2 > Rational::zero() && self.c3 > Rational::zero()
    }

    pub fn gap(&self) -> Rational {
        &self.c2 * &self.c2 / int(2) - &self.c3
    }
}
