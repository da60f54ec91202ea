//! Branch-and-bound search for `k` pairwise crossing edges.

use crossmono::generate::{generate, GeneratorKind, GeneratorSpec};
use crossmono::rational::{int, ratio};
use crossmono::structure::find_pairwise_crossing_edges;

fn main() {
    for k in 2..=5 {
        let g = generate(&GeneratorSpec::new(GeneratorKind::ConvexPosition, 2 * k, int(1), 0)).unwrap();
        let family = find_pairwise_crossing_edges(&g, k).unwrap().expect("convex K_2k has k crossing diagonals");
        let edges: Vec<_> = family.iter().map(|&e| g.edge(e)).collect();
        println!("convex K{}: {k} pairwise crossing edges {edges:?}", 2 * k);
        println!("  k + 1 = {} found: {}", k + 1, find_pairwise_crossing_edges(&g, k + 1).unwrap().is_some());
    }
    let g = generate(&GeneratorSpec::new(GeneratorKind::UniformSquare, 30, ratio(1, 2), 3)).unwrap();
    for k in 2..=8 {
        let found = find_pairwise_crossing_edges(&g, k).unwrap();
        println!("uniform n = 30, d = 1/2: k = {k}: {}", if found.is_some() { "found" } else { "none" });
    }
}
