//! Independent reference implementations used by the integration and
//! acceptance tests. None of these call into the library's predicates.

#![allow(dead_code)]

use crossmono::rational::ratio;
use crossmono::{GeometricGraph, Point, Rational};

pub fn det(a: Point, b: Point, c: Point) -> i128 {
    let (ax, ay) = (a.x as i128, a.y as i128);
    (b.x as i128 - ax) * (c.y as i128 - ay) - (b.y as i128 - ay) * (c.x as i128 - ax)
}

/// Proper crossing via the parametric intersection `p + t·r = q + u·s`,
/// requiring `0 < t, u < 1` exactly.
pub fn param_cross(p: Point, p2: Point, q: Point, q2: Point) -> bool {
    let r = (p2.x as i128 - p.x as i128, p2.y as i128 - p.y as i128);
    let s = (q2.x as i128 - q.x as i128, q2.y as i128 - q.y as i128);
    let qp = (q.x as i128 - p.x as i128, q.y as i128 - p.y as i128);
    let cross = |a: (i128, i128), b: (i128, i128)| a.0 * b.1 - a.1 * b.0;
    let mut denom = cross(r, s);
    if denom == 0 {
        return false;
    }
    let mut t = cross(qp, s);
    let mut u = cross(qp, r);
    if denom < 0 {
        denom = -denom;
        t = -t;
        u = -u;
    }
    0 < t && t < denom && 0 < u && u < denom
}

pub fn edge_cross(g: &GeometricGraph, e: usize, f: usize) -> bool {
    let (a, b) = g.edge(e);
    let (c, d) = g.edge(f);
    param_cross(g.point(a), g.point(b), g.point(c), g.point(d))
}

/// All crossing pairs `(e, f)`, `e < f`, by direct O(m²) scan.
pub fn crossing_pairs(g: &GeometricGraph) -> Vec<(usize, usize)> {
    let m = g.edge_count();
    let mut out = Vec::new();
    for e in 0..m {
        for f in e + 1..m {
            if edge_cross(g, e, f) {
                out.push((e, f));
            }
        }
    }
    out
}

pub fn mono_count(g: &GeometricGraph, colors: &[u32]) -> u64 {
    crossing_pairs(g).iter().filter(|&&(e, f)| colors[e] == colors[f]).count() as u64
}

pub fn choose(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `K_{2,2}` copies with two vertices in `y` and two in `z`, by 4-subset scan.
pub fn k22_oracle(g: &GeometricGraph, y: &[usize], z: &[usize]) -> u64 {
    let mut count = 0;
    for i in 0..y.len() {
        for j in i + 1..y.len() {
            for a in 0..z.len() {
                for b in a + 1..z.len() {
                    let (y1, y2, z1, z2) = (y[i], y[j], z[a], z[b]);
                    if g.has_edge(y1, z1) && g.has_edge(y1, z2) && g.has_edge(y2, z1) && g.has_edge(y2, z2) {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

/// Average over every tuple of the box of its induced edge density.
pub fn tuple_average_density(g: &GeometricGraph, factors: &[Vec<usize>]) -> Rational {
    let r = factors.len();
    let pairs = (r * (r - 1) / 2) as i64;
    let mut idx = vec![0usize; r];
    let mut total_edges: i64 = 0;
    let mut tuples: i64 = 0;
    loop {
        let t: Vec<usize> = (0..r).map(|i| factors[i][idx[i]]).collect();
        for i in 0..r {
            for j in i + 1..r {
                if g.has_edge(t[i], t[j]) {
                    total_edges += 1;
                }
            }
        }
        tuples += 1;
        let mut pos = 0;
        loop {
            if pos == r {
                return ratio(total_edges, tuples * pairs);
            }
            idx[pos] += 1;
            if idx[pos] < factors[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn density_between(g: &GeometricGraph, x: &[usize], y: &[usize]) -> Rational {
    let e = x.iter().flat_map(|&u| y.iter().map(move |&v| (u, v))).filter(|&(u, v)| g.has_edge(u, v)).count();
    ratio(e as i64, (x.len() * y.len()) as i64)
}

/// Literal ε-regularity: every `X ⊆ A`, `Y ⊆ B` with `|X| ≥ ε|A|`,
/// `|Y| ≥ ε|B|` has `|d(X,Y) − d(A,B)| ≤ ε`.
pub fn literal_regular(g: &GeometricGraph, a: &[usize], b: &[usize], eps: &Rational) -> bool {
    let d = density_between(g, a, b);
    let subsets = |s: &[usize]| -> Vec<Vec<usize>> {
        (1u32..1 << s.len())
            .map(|mask| (0..s.len()).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect::<Vec<_>>())
            .filter(|x| ratio(x.len() as i64, 1) >= eps * ratio(s.len() as i64, 1))
            .collect()
    };
    let ys = subsets(b);
    for x in subsets(a) {
        for y in &ys {
            let gap = density_between(g, &x, y) - &d;
            let gap = if gap < Rational::default() { -gap } else { gap };
            if &gap > eps {
                return false;
            }
        }
    }
    true
}

/// Whether some `k` edges pairwise cross, by scanning all `k`-subsets.
pub fn crossing_family_exists(g: &GeometricGraph, k: usize) -> bool {
    fn rec(g: &GeometricGraph, k: usize, start: usize, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == k {
            return true;
        }
        for e in start..g.edge_count() {
            if chosen.iter().all(|&f| edge_cross(g, e, f)) {
                chosen.push(e);
                if rec(g, k, e + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    rec(g, k, 0, &mut Vec::new())
}

/// Same-type transversals by brute force: every transversal has the same
/// orientation on every triple of parts as the first transversal.
pub fn same_type_oracle(points: &[Point], parts: &[Vec<usize>]) -> bool {
    let t = parts.len();
    let sign = |tr: &[usize], i: usize, j: usize, l: usize| det(points[tr[i]], points[tr[j]], points[tr[l]]).signum();
    let mut idx = vec![0usize; t];
    let first: Vec<usize> = parts.iter().map(|p| p[0]).collect();
    loop {
        let tr: Vec<usize> = (0..t).map(|i| parts[i][idx[i]]).collect();
        for i in 0..t {
            for j in i + 1..t {
                for l in j + 1..t {
                    if sign(&tr, i, j, l) != sign(&first, i, j, l) {
                        return false;
                    }
                }
            }
        }
        let mut pos = 0;
        loop {
            if pos == t {
                return true;
            }
            idx[pos] += 1;
            if idx[pos] < parts[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// `n` points with no three collinear, checked with the oracle's own
/// determinant.
pub fn random_points(n: usize, range: i32, rng: &mut impl rand::Rng) -> Vec<Point> {
    loop {
        let pts: Vec<Point> = (0..n).map(|_| Point::new(rng.gen_range(-range..=range), rng.gen_range(-range..=range))).collect();
        let mut ok = true;
        'scan: for i in 0..n {
            for j in i + 1..n {
                if pts[i] == pts[j] {
                    ok = false;
                    break 'scan;
                }
                for l in j + 1..n {
                    if det(pts[i], pts[j], pts[l]) == 0 {
                        ok = false;
                        break 'scan;
                    }
                }
            }
        }
        if ok {
            return pts;
        }
    }
}

/// Random graph on [`random_points`] keeping each pair with probability `p`.
pub fn random_graph(n: usize, p: f64, range: i32, rng: &mut impl rand::Rng) -> GeometricGraph {
    let pts = random_points(n, range, rng);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    GeometricGraph::new(crossmono::PointSet::new(pts).unwrap(), edges).unwrap()
}

pub fn convex_complete(n: usize) -> GeometricGraph {
    let pts = (0..n as i32).map(|i| Point::new(i, i * i)).collect();
    GeometricGraph::complete(crossmono::PointSet::new(pts).unwrap())
}
