//! Crossing pairs of geometric graphs, including the convex `K_n` count
//! `C(n, 4)` and the file round trip.

use crossmono::generate::{generate, GeneratorKind, GeneratorSpec};
use crossmono::rational::{int, ratio};
use crossmono::GeometricGraph;

fn choose4(n: u64) -> u64 {
    n * (n - 1) * (n - 2) * (n - 3) / 24
}

fn main() {
    for n in [4, 6, 8, 10, 12] {
        let g = generate(&GeneratorSpec::new(GeneratorKind::ConvexPosition, n, int(1), 7)).unwrap();
        println!("convex K{n}: {} crossings, C(n,4) = {}", g.crossing_set().count, choose4(n as u64));
    }
    for kind in GeneratorKind::ALL {
        let g = generate(&GeneratorSpec::new(kind, 40, ratio(1, 2), 3)).unwrap();
        println!("{kind:>15}, n = 40, d = 1/2: {} edges, {} crossings", g.edge_count(), g.crossing_set().count);
    }

    let g = generate(&GeneratorSpec::new(GeneratorKind::UniformSquare, 8, ratio(1, 2), 11)).unwrap();
    let text = g.to_text();
    let back = GeometricGraph::parse(&text).unwrap();
    println!("graph file round trip preserves crossings: {}", back.crossing_set() == g.crossing_set());
    println!("{text}");
}
