//! Same-type transversals: an exact checker and a refinement that shrinks
//! parts until the checker passes.
//!
//! The order type of a transversal is fixed by the signs of its triples, so
//! `(X_1, …, X_t)` has same-type transversals iff for every index triple
//! `i < j < k` the orientation of `(x_i, x_j, x_k)` is the same for all
//! choices of points.

use num_traits::One;
use serde::Serialize;

use super::VertexTuplePartition;
use crate::error::{Error, Result};
use crate::geometry::{orientation, Orientation, PointSet};
use crate::rational::{self, ratio, Rational};

/// Two transversal triples of the same parts with opposite orientation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SameTypeViolation {
    /// Part indices `i < j < k`.
    pub parts: [usize; 3],
    pub first: [usize; 3],
    pub second: [usize; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SameTypeVerdict {
    SameType,
    Violation(SameTypeViolation),
}

impl SameTypeVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, SameTypeVerdict::SameType)
    }
}

pub fn same_type_check(points: &PointSet, partition: &VertexTuplePartition) -> SameTypeVerdict {
    let parts = partition.parts();
    let t = parts.len();
    for i in 0..t {
        for j in i + 1..t {
            for k in j + 1..t {
                if let Some(v) = triple_violation(points, parts, [i, j, k]) {
                    return SameTypeVerdict::Violation(v);
                }
            }
        }
    }
    SameTypeVerdict::SameType
}

fn triple_violation(points: &PointSet, parts: &[Vec<usize>], idx: [usize; 3]) -> Option<SameTypeViolation> {
    let [i, j, k] = idx;
    let first = [parts[i][0], parts[j][0], parts[k][0]];
    let reference = orient(points, first);
    for &a in &parts[i] {
        for &b in &parts[j] {
            for &c in &parts[k] {
                if orient(points, [a, b, c]) != reference {
                    return Some(SameTypeViolation { parts: idx, first, second: [a, b, c] });
                }
            }
        }
    }
    None
}

fn orient(points: &PointSet, [a, b, c]: [usize; 3]) -> Orientation {
    orientation(points.get(a), points.get(b), points.get(c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SameTypeConfig {
    /// Maximum number of cuts before giving up.
    pub iteration_cap: usize,
    /// Exhaustive subset search is used when every part has at most this many points...
    pub exhaustive_part_size: usize,
    /// ...and the number of subset combinations is at most this.
    pub exhaustive_combinations: u64,
}

impl Default for SameTypeConfig {
    fn default() -> Self {
        SameTypeConfig { iteration_cap: 100_000, exhaustive_part_size: 5, exhaustive_combinations: 1 << 15 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SameTypeRefinement {
    pub partition: VertexTuplePartition,
    /// `min_i |X_i'| / |X_i|`.
    #[serde(with = "rational")]
    pub beta: Rational,
    pub cuts: usize,
    pub exhaustive: bool,
}

/// Shrinks each part to a nonempty subset so that the result has same-type
/// transversals. The output is always re-verified by [`same_type_check`].
///
/// Strategy: while some line through one point of each of two parts splits a
/// third part, cut the part whose majority side keeps the largest fraction
/// (larger parts first on ties) and keep that majority side. Every cut
/// strictly shrinks a part, so this terminates. Small inputs are solved by
/// exhaustive subset search maximizing `β`, then total size.
pub fn same_type_refine(
    points: &PointSet,
    partition: &VertexTuplePartition,
    config: &SameTypeConfig,
) -> Result<SameTypeRefinement> {
    if same_type_check(points, partition).holds() {
        return Ok(SameTypeRefinement { partition: partition.clone(), beta: Rational::one(), cuts: 0, exhaustive: false });
    }
    let original = partition.parts();
    let (parts, cuts, exhaustive) = match exhaustive_search(points, original, config) {
        Some(parts) => (parts, 0, true),
        None => {
            let (parts, cuts) = greedy_cuts(points, original, config)?;
            (parts, cuts, false)
        }
    };
    let refined = VertexTuplePartition::new(parts)?;
    if let SameTypeVerdict::Violation(v) = same_type_check(points, &refined) {
        return Err(Error::pipeline(crate::error::Stage::SameType, format!("refinement left violation {v:?}")));
    }
    let beta = fraction_kept(original, refined.parts());
    Ok(SameTypeRefinement { partition: refined, beta, cuts, exhaustive })
}

fn fraction_kept(original: &[Vec<usize>], refined: &[Vec<usize>]) -> Rational {
    original
        .iter()
        .zip(refined)
        .map(|(o, r)| ratio(r.len() as u64, o.len() as u64))
        .min()
        .unwrap_or_else(Rational::one)
}

struct Cut {
    part: usize,
    keep: Vec<usize>,
    original_len: usize,
}

fn greedy_cuts(
    points: &PointSet,
    original: &[Vec<usize>],
    config: &SameTypeConfig,
) -> Result<(Vec<Vec<usize>>, usize)> {
    let mut parts = original.to_vec();
    let t = parts.len();
    let mut cuts = 0;
    loop {
        let mut best: Option<Cut> = None;
        for i in 0..t {
            for j in i + 1..t {
                for k in j + 1..t {
                    for (cut, a, b) in [(k, i, j), (j, i, k), (i, j, k)] {
                        consider_cuts(points, &parts, cut, a, b, &mut best);
                    }
                }
            }
        }
        let Some(cut) = best else { return Ok((parts, cuts)) };
        if cuts >= config.iteration_cap {
            let beta = fraction_kept(original, &parts);
            return Err(Error::SearchExhausted {
                what: "same-type refinement".into(),
                progress: format!("{cuts} cuts, current beta {beta}"),
            });
        }
        debug_assert!(cut.keep.len() < cut.original_len && !cut.keep.is_empty());
        parts[cut.part] = cut.keep;
        cuts += 1;
    }
}

/// Records the best majority-side cut of `parts[cut]` by a line through a
/// point of `parts[a]` and a point of `parts[b]`.
fn consider_cuts(points: &PointSet, parts: &[Vec<usize>], cut: usize, a: usize, b: usize, best: &mut Option<Cut>) {
    let target = &parts[cut];
    if target.len() < 2 {
        return;
    }
    for &p in &parts[a] {
        for &q in &parts[b] {
            let (pp, qq) = (points.get(p), points.get(q));
            let left: Vec<usize> =
                target.iter().copied().filter(|&v| orientation(pp, qq, points.get(v)) == Orientation::Minus).collect();
            if left.is_empty() || left.len() == target.len() {
                continue;
            }
            let keep = if 2 * left.len() >= target.len() {
                left
            } else {
                target.iter().copied().filter(|v| !left.contains(v)).collect()
            };
            let better = match best {
                None => true,
                // Larger kept fraction, then larger part.
                Some(cur) => {
                    let lhs = keep.len() * cur.original_len;
                    let rhs = cur.keep.len() * target.len();
                    lhs > rhs || (lhs == rhs && target.len() > cur.original_len)
                }
            };
            if better {
                *best = Some(Cut { part: cut, keep, original_len: target.len() });
            }
        }
    }
}

fn exhaustive_search(points: &PointSet, parts: &[Vec<usize>], config: &SameTypeConfig) -> Option<Vec<Vec<usize>>> {
    if parts.iter().any(|p| p.len() > config.exhaustive_part_size) {
        return None;
    }
    let mut combos: u64 = 1;
    for p in parts {
        combos = combos.checked_mul((1u64 << p.len()) - 1)?;
        if combos > config.exhaustive_combinations {
            return None;
        }
    }
    // Odometer over nonempty masks, one per part.
    let mut masks: Vec<u64> = vec![1; parts.len()];
    let mut best: Option<(Rational, usize, Vec<u64>)> = None;
    loop {
        let chosen: Vec<Vec<usize>> = parts
            .iter()
            .zip(&masks)
            .map(|(p, &m)| p.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &v)| v).collect())
            .collect();
        let beta = fraction_kept(parts, &chosen);
        let total: usize = chosen.iter().map(Vec::len).sum();
        let improves = match &best {
            None => true,
            Some((b, t, _)) => beta > *b || (beta == *b && total > *t),
        };
        if improves {
            let candidate = VertexTuplePartition { parts: chosen };
            if same_type_check(points, &candidate).holds() {
                best = Some((beta, total, masks.clone()));
            }
        }
        let mut i = 0;
        loop {
            if i == parts.len() {
                let (_, _, masks) = best?;
                return Some(
                    parts
                        .iter()
                        .zip(&masks)
                        .map(|(p, &m)| p.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &v)| v).collect())
                        .collect(),
                );
            }
            masks[i] += 1;
            if masks[i] < 1u64 << parts[i].len() {
                break;
            }
            masks[i] = 1;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn points(v: &[(i32, i32)]) -> PointSet {
        PointSet::new(v.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    fn partition(parts: Vec<Vec<usize>>) -> VertexTuplePartition {
        VertexTuplePartition::new(parts).unwrap()
    }

    #[test]
    fn singletons_are_same_type() {
        let s = points(&[(0, 0), (3, 1), (1, 4)]);
        assert!(same_type_check(&s, &partition(vec![vec![0], vec![1], vec![2]])).holds());
        assert!(same_type_check(&s, &partition(vec![vec![0, 1], vec![2]])).holds());
    }

    #[test]
    fn points_on_both_sides_violate() {
        let s = points(&[(0, 0), (10, 0), (5, 1), (5, -1)]);
        let p = partition(vec![vec![0], vec![1], vec![2, 3]]);
        let SameTypeVerdict::Violation(v) = same_type_check(&s, &p) else { panic!("expected violation") };
        assert_eq!(v.parts, [0, 1, 2]);
        assert_eq!((v.first, v.second), ([0, 1, 2], [0, 1, 3]));
        assert_ne!(orient(&s, v.first), orient(&s, v.second));
    }

    #[test]
    fn separated_clusters_are_same_type() {
        // Exhaustive: every triple with one point per cluster.
        let mut pts = Vec::new();
        for (cx, cy) in [(0, 0), (1000, 37), (480, 1000)] {
            for (dx, dy) in [(0, 0), (1, 0), (0, 1), (2, 3), (3, 1)] {
                pts.push((cx + dx, cy + dy));
            }
        }
        let s = points(&pts);
        let p = partition((0..3).map(|c| (5 * c..5 * c + 5).collect()).collect());
        assert!(same_type_check(&s, &p).holds());
        let refined = same_type_refine(&s, &p, &SameTypeConfig::default()).unwrap();
        assert_eq!(refined.partition, p);
        assert_eq!(refined.beta, Rational::one());
    }

    #[test]
    fn refine_overlapping_clusters() {
        // Three 8-point clusters; the third straddles the line through the first two.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut pts: Vec<Point> = Vec::new();
        let centers = [(0, 0), (200, 4), (100, 2)];
        for &(cx, cy) in &centers {
            let mut added = 0;
            while added < 8 {
                let q = Point::new(cx + rng.gen_range(-30..=30), cy + rng.gen_range(-30..=30));
                let mut cand = pts.clone();
                cand.push(q);
                if PointSet::new(cand).is_ok() {
                    pts.push(q);
                    added += 1;
                }
            }
        }
        let s = PointSet::new(pts).unwrap();
        let p = partition((0..3).map(|c| (8 * c..8 * c + 8).collect()).collect());
        assert!(!same_type_check(&s, &p).holds());
        let refined = same_type_refine(&s, &p, &SameTypeConfig::default()).unwrap();
        assert!(same_type_check(&s, &refined.partition).holds());
        for (o, r) in p.parts().iter().zip(refined.partition.parts()) {
            assert!(!r.is_empty() && r.iter().all(|v| o.contains(v)));
        }
    }

    #[test]
    fn exhaustive_mode_keeps_the_most() {
        let s = points(&[(0, 0), (10, 0), (5, 1), (5, -1), (6, 3)]);
        let p = partition(vec![vec![0], vec![1], vec![2, 3, 4]]);
        let refined = same_type_refine(&s, &p, &SameTypeConfig::default()).unwrap();
        assert!(refined.exhaustive);
        assert_eq!(refined.partition.parts()[2], vec![2, 4]);
        assert_eq!(refined.beta, ratio(2, 3));
    }

    #[test]
    fn greedy_mode_matches_checker() {
        let s = points(&[(0, 0), (10, 0), (5, 1), (5, -1), (6, 3)]);
        let p = partition(vec![vec![0], vec![1], vec![2, 3, 4]]);
        let config = SameTypeConfig { exhaustive_part_size: 0, ..SameTypeConfig::default() };
        let refined = same_type_refine(&s, &p, &config).unwrap();
        assert!(!refined.exhaustive);
        assert_eq!(refined.partition.parts()[2], vec![2, 4]);
        assert_eq!(refined.cuts, 1);
    }

    #[test]
    fn iteration_cap_reports_progress() {
        let s = points(&[(0, 0), (10, 0), (5, 1), (5, -1), (6, 3), (4, -3)]);
        let p = partition(vec![vec![0], vec![1], vec![2, 3, 4, 5]]);
        let config = SameTypeConfig { iteration_cap: 0, exhaustive_part_size: 0, ..SameTypeConfig::default() };
        let err = same_type_refine(&s, &p, &config).unwrap_err();
        assert!(matches!(err, Error::SearchExhausted { .. }), "{err}");
    }
}
