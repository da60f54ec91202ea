//! Random colorings average `1/k` monochromatic crossings; the greedy
//! conditional-expectation coloring never exceeds it.

use crossmono::coloring::{coloring_stats, derandomized_coloring, random_coloring};
use crossmono::generate::{generate, GeneratorKind, GeneratorSpec};
use crossmono::rational::{ratio, to_f64};
use crossmono::EdgeOrder;

fn main() {
    let g = generate(&GeneratorSpec::new(GeneratorKind::UniformSquare, 30, ratio(3, 4), 5)).unwrap();
    let crossings = g.crossing_set();
    println!("n = 30, {} edges, {} crossing pairs", g.edge_count(), crossings.count);
    for k in [2, 3, 4] {
        let trials = 200;
        let mean: f64 = (0..trials)
            .map(|seed| to_f64(&coloring_stats(&g, &random_coloring(&g, k, seed).unwrap()).unwrap().ratio))
            .sum::<f64>()
            / trials as f64;
        let greedy = coloring_stats(&g, &derandomized_coloring(&g, k, &EdgeOrder::default()).unwrap()).unwrap();
        let natural = coloring_stats(&g, &derandomized_coloring(&g, k, &EdgeOrder::Natural).unwrap()).unwrap();
        println!(
            "k = {k}: random mean {mean:.4} (1/k = {:.4}), greedy {:.4} [{} mono], natural order {:.4}, within crs/k: {}",
            1.0 / k as f64,
            to_f64(&greedy.ratio),
            greedy.mono,
            to_f64(&natural.ratio),
            greedy.within_average(k) && natural.within_average(k),
        );
    }
}
