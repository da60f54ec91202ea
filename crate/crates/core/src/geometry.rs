//! Exact planar predicates on integer points.
//!
//! Coordinates are 32-bit integers, so every orientation determinant is
//! computed exactly in 128-bit arithmetic. A sign of [`Orientation::Minus`]
//! means the third point lies strictly to the left of the directed line
//! through the first two.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i32,
    pub y: i32,
}

impl Point {
    pub const fn new(x: i32, y: i32) -> Self {
        Point { x, y }
    }

    /// Builds a point from wide integers, rejecting values outside `i32`.
    pub fn checked(x: i64, y: i64) -> Result<Self> {
        let x = i32::try_from(x).map_err(|_| Error::CoordinateRange(x))?;
        let y = i32::try_from(y).map_err(|_| Error::CoordinateRange(y))?;
        Ok(Point { x, y })
    }
}

impl From<(i32, i32)> for Point {
    fn from((x, y): (i32, i32)) -> Self {
        Point::new(x, y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    /// `r` strictly left of `p → q` (counter-clockwise turn).
    Minus,
    Zero,
    /// `r` strictly right of `p → q` (clockwise turn).
    Plus,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Minus => Orientation::Plus,
            Orientation::Zero => Orientation::Zero,
            Orientation::Plus => Orientation::Minus,
        }
    }

    fn as_i8(self) -> i8 {
        match self {
            Orientation::Minus => -1,
            Orientation::Zero => 0,
            Orientation::Plus => 1,
        }
    }

    fn from_i8(v: i8) -> Self {
        match v.signum() {
            -1 => Orientation::Minus,
            0 => Orientation::Zero,
            _ => Orientation::Plus,
        }
    }
}

#[inline]
pub(crate) fn det(p: Point, q: Point, r: Point) -> i128 {
    let (px, py) = (p.x as i128, p.y as i128);
    (q.x as i128 - px) * (r.y as i128 - py) - (q.y as i128 - py) * (r.x as i128 - px)
}

/// Sign of the determinant `|q − p, r − p|`, reported as left = `Minus`.
#[inline]
pub fn orientation(p: Point, q: Point, r: Point) -> Orientation {
    match det(p, q, r).signum() {
        1 => Orientation::Minus,
        -1 => Orientation::Plus,
        _ => Orientation::Zero,
    }
}

/// Whether the open segments `a` and `b` meet in a single interior point.
///
/// Assumes the endpoints are in general position; segments sharing an
/// endpoint never cross.
#[inline]
pub fn segments_cross(a: (Point, Point), b: (Point, Point)) -> bool {
    let (a0, a1) = a;
    let (b0, b1) = b;
    if a0 == b0 || a0 == b1 || a1 == b0 || a1 == b1 {
        return false;
    }
    let d1 = det(a0, a1, b0).signum();
    let d2 = det(a0, a1, b1).signum();
    let d3 = det(b0, b1, a0).signum();
    let d4 = det(b0, b1, a1).signum();
    d1 * d2 < 0 && d3 * d4 < 0
}

/// Distinct points with no three collinear. Point ids are list indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    /// Validates distinctness and general position (O(n³)).
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if let Some((first, second)) = find_duplicate(&points) {
            return Err(Error::DuplicatePoint { point: points[first], first, second });
        }
        if let Some(t) = find_collinear(&points) {
            return Err(Error::Collinear(t));
        }
        Ok(PointSet { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn get(&self, id: usize) -> Point {
        self.points[id]
    }

    /// Sub-point-set on the given ids, in the given order.
    pub fn subset(&self, ids: &[usize]) -> PointSet {
        PointSet { points: ids.iter().map(|&i| self.points[i]).collect() }
    }

    /// Parses the point-set text format: one `x y` pair per line, `#` comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let Some(body) = strip_comment(line) else { continue };
            points.push(parse_point(body, lineno + 1)?);
        }
        PointSet::new(points)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.points {
            out.push_str(&format!("{} {}\n", p.x, p.y));
        }
        out
    }
}

impl FromStr for PointSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PointSet::parse(s)
    }
}

/// Returns the non-comment content of a line, or `None` for blank lines.
pub(crate) fn strip_comment(line: &str) -> Option<&str> {
    let body = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let body = body.trim();
    (!body.is_empty()).then_some(body)
}

pub(crate) fn parse_point(body: &str, line: usize) -> Result<Point> {
    let mut it = body.split_whitespace();
    let (Some(x), Some(y), None) = (it.next(), it.next(), it.next()) else {
        return Err(Error::Parse { line, msg: format!("expected `x y`, got `{body}`") });
    };
    let parse = |s: &str| {
        s.parse::<i64>().map_err(|e| Error::Parse { line, msg: format!("bad integer `{s}`: {e}") })
    };
    Point::checked(parse(x)?, parse(y)?)
}

fn find_duplicate(points: &[Point]) -> Option<(usize, usize)> {
    let mut sorted: Vec<(Point, usize)> = points.iter().copied().zip(0..).collect();
    sorted.sort();
    sorted.windows(2).find(|w| w[0].0 == w[1].0).map(|w| (w[0].1.min(w[1].1), w[0].1.max(w[1].1)))
}

/// First collinear triple `i < j < k` in lexicographic order.
pub fn find_collinear(points: &[Point]) -> Option<[usize; 3]> {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if det(points[i], points[j], points[k]) == 0 {
                    return Some([i, j, k]);
                }
            }
        }
    }
    None
}

/// Orientation of every ordered triple of distinct ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderType {
    n: usize,
    signs: Vec<i8>,
}

impl OrderType {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stored ordered triples, `n(n-1)(n-2)`.
    pub fn len(&self) -> usize {
        self.n * self.n.saturating_sub(1) * self.n.saturating_sub(2)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `None` when the ids are not pairwise distinct.
    pub fn sign(&self, p: usize, q: usize, r: usize) -> Option<Orientation> {
        if p == q || q == r || p == r {
            return None;
        }
        Some(Orientation::from_i8(self.signs[(p * self.n + q) * self.n + r]))
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize, usize), Orientation)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |p| {
            (0..n).flat_map(move |q| {
                (0..n).filter_map(move |r| self.sign(p, q, r).map(|s| ((p, q, r), s)))
            })
        })
    }
}

pub fn order_type(set: &PointSet) -> Result<OrderType> {
    let n = set.len();
    let mut signs = vec![0i8; n * n * n];
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                if p == q || q == r || p == r {
                    continue;
                }
                let o = orientation(set.get(p), set.get(q), set.get(r));
                if o == Orientation::Zero {
                    let mut t = [p, q, r];
                    t.sort_unstable();
                    return Err(Error::Collinear(t));
                }
                signs[(p * n + q) * n + r] = o.as_i8();
            }
        }
    }
    Ok(OrderType { n, signs })
}

/// Whether `f` (point `i` of `s` ↦ point `f[i]` of `t`) preserves all triple signs.
pub fn same_order_type(s: &PointSet, t: &PointSet, f: &[usize]) -> Result<bool> {
    if s.len() != t.len() {
        return Err(Error::SizeMismatch(s.len(), t.len()));
    }
    if f.len() != s.len() {
        return Err(Error::NotBijection(format!("map has {} entries for {} points", f.len(), s.len())));
    }
    let mut seen = vec![false; t.len()];
    for &j in f {
        if j >= t.len() || std::mem::replace(&mut seen[j], true) {
            return Err(Error::NotBijection(format!("target {j} repeated or out of range")));
        }
    }
    let n = s.len();
    for p in 0..n {
        for q in p + 1..n {
            for r in q + 1..n {
                let a = orientation(s.get(p), s.get(q), s.get(r));
                let b = orientation(t.get(f[p]), t.get(f[q]), t.get(f[r]));
                if a != b {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: i32, y: i32) -> Point {
        Point::new(x, y)
    }

    fn set(v: &[(i32, i32)]) -> PointSet {
        PointSet::new(v.iter().map(|&(x, y)| p(x, y)).collect()).unwrap()
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orientation(p(0, 0), p(1, 0), p(0, 1)), Orientation::Minus);
        assert_eq!(orientation(p(0, 0), p(1, 0), p(1, -1)), Orientation::Plus);
        assert_eq!(orientation(p(0, 0), p(1, 1), p(2, 2)), Orientation::Zero);
    }

    #[test]
    fn orientation_is_exact_at_extreme_coordinates() {
        let m = i32::MAX;
        let n = i32::MIN;
        assert_eq!(orientation(p(n, n), p(m, m), p(m - 1, m)), Orientation::Minus);
        assert_eq!(orientation(p(n, n), p(m, m), p(m, m - 1)), Orientation::Plus);
        assert_eq!(orientation(p(n, n), p(0, 0), p(m, m)), Orientation::Zero);
    }

    #[test]
    fn crossing_examples() {
        assert!(segments_cross((p(0, 0), p(2, 2)), (p(0, 2), p(2, 0))));
        assert!(!segments_cross((p(0, 0), p(1, 0)), (p(0, 1), p(1, 1))));
        assert!(!segments_cross((p(0, 0), p(2, 2)), (p(2, 2), p(4, 0))));
    }

    #[test]
    fn point_set_rejects_degeneracies() {
        let err = PointSet::new(vec![p(0, 0), p(5, 1), p(1, 1), p(2, 2)]).unwrap_err();
        assert!(matches!(err, Error::Collinear([0, 2, 3])), "{err}");
        let err = PointSet::new(vec![p(0, 0), p(1, 0), p(0, 0)]).unwrap_err();
        assert!(matches!(err, Error::DuplicatePoint { first: 0, second: 2, .. }));
    }

    #[test]
    fn order_type_of_triangle() {
        let s = set(&[(0, 0), (2, 0), (1, 2)]);
        let ot = order_type(&s).unwrap();
        assert_eq!(ot.len(), 6);
        assert_eq!(ot.iter().count(), 6);
        assert_eq!(ot.sign(0, 1, 2), Some(Orientation::Minus));
        assert_eq!(ot.sign(0, 0, 2), None);
    }

    #[test]
    fn order_type_size_and_translation() {
        let a = set(&[(0, 0), (7, 1), (3, 9), (-4, 5), (10, 12)]);
        let ot = order_type(&a).unwrap();
        assert_eq!(ot.len(), 5 * 4 * 3);
        let b = PointSet::new(a.points().iter().map(|q| p(q.x + 100, q.y - 37)).collect()).unwrap();
        assert_eq!(order_type(&b).unwrap(), ot);
    }

    #[test]
    fn convex_versus_triangle_with_interior_point() {
        // Brute force over all 24 bijections.
        let s = set(&[(0, 0), (4, 0), (4, 4), (0, 4)]);
        let t = set(&[(0, 0), (4, 0), (2, 4), (2, 1)]);
        let mut perm = [0usize, 1, 2, 3];
        let mut count = 0;
        permutations(&mut perm, 0, &mut |f| {
            count += 1;
            assert!(!same_order_type(&s, &t, f).unwrap());
        });
        assert_eq!(count, 24);
    }

    fn permutations(a: &mut [usize], i: usize, f: &mut dyn FnMut(&[usize])) {
        if i == a.len() {
            f(a);
            return;
        }
        for j in i..a.len() {
            a.swap(i, j);
            permutations(a, i + 1, f);
            a.swap(i, j);
        }
    }

    #[test]
    fn same_order_type_identity_and_errors() {
        let s = set(&[(0, 0), (4, 0), (4, 4), (0, 4)]);
        assert!(same_order_type(&s, &s, &[0, 1, 2, 3]).unwrap());
        assert!(matches!(same_order_type(&s, &s, &[0, 1, 1, 3]), Err(Error::NotBijection(_))));
        let t = set(&[(0, 0), (4, 0), (4, 4)]);
        assert!(matches!(same_order_type(&s, &t, &[0, 1, 2]), Err(Error::SizeMismatch(4, 3))));
    }

    #[test]
    fn parse_point_file() {
        let text = "# header\n0 0\n 5 1 # trailing\n\n2 7\n";
        let s = PointSet::parse(text).unwrap();
        assert_eq!(s.points(), &[p(0, 0), p(5, 1), p(2, 7)]);
        assert_eq!(PointSet::parse(&s.to_text()).unwrap(), s);
        assert!(matches!(PointSet::parse("1 2 3"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(PointSet::parse("1 99999999999"), Err(Error::CoordinateRange(_))));
    }

    fn small_point() -> impl Strategy<Value = Point> {
        (-50i32..50, -50i32..50).prop_map(|(x, y)| Point::new(x, y))
    }

    proptest! {
        #[test]
        fn transposition_flips_sign(a in small_point(), b in small_point(), c in small_point()) {
            prop_assert_eq!(orientation(a, b, c), orientation(b, a, c).reversed());
            prop_assert_eq!(orientation(a, b, c), orientation(a, c, b).reversed());
        }

        #[test]
        fn crossing_is_symmetric(a in small_point(), b in small_point(), c in small_point(), d in small_point()) {
            prop_assert_eq!(segments_cross((a, b), (c, d)), segments_cross((c, d), (a, b)));
            prop_assert_eq!(segments_cross((a, b), (c, d)), segments_cross((b, a), (d, c)));
        }

        #[test]
        fn positive_affine_maps_preserve_order_type(
            pts in proptest::collection::vec(small_point(), 4..8),
            m in (1i32..5, -3i32..4, -3i32..4, 1i32..5),
            shift in (-100i32..100, -100i32..100),
        ) {
            let (a, b, c, d) = m;
            prop_assume!(a * d - b * c > 0);
            let Ok(s) = PointSet::new(pts) else { return Ok(()) };
            let t = PointSet::new(
                s.points().iter().map(|q| p(a * q.x + b * q.y + shift.0, c * q.x + d * q.y + shift.1)).collect(),
            ).unwrap();
            let id: Vec<usize> = (0..s.len()).collect();
            prop_assert!(same_order_type(&s, &t, &id).unwrap());
        }
    }
}
