//! Geometric `K_{2,2}`: of its two disjoint edge pairs, at most one crosses.

use crossmono::generate::{generate, GeneratorKind, GeneratorSpec};
use crossmono::rational::int;
use crossmono::structure::{count_k22, noncrossing_disjoint_pairs, Bundle};

fn main() {
    let mut both_cross = 0;
    for seed in 0..1000 {
        let g = generate(&GeneratorSpec::new(GeneratorKind::UniformSquare, 4, int(1), seed)).unwrap();
        let b = Bundle::new(&g, vec![0, 1], vec![2, 3]).unwrap();
        let pairs = [(b.edges[0], b.edges[3]), (b.edges[1], b.edges[2])];
        if pairs.iter().all(|&(e, f)| g.crosses(e, f)) {
            both_cross += 1;
        }
    }
    println!("random K22 with both disjoint pairs crossing: {both_cross} of 1000");

    let g = generate(&GeneratorSpec::new(GeneratorKind::UniformSquare, 20, int(1), 1)).unwrap();
    let (y, z): (Vec<usize>, Vec<usize>) = ((0..6).collect(), (6..14).collect());
    let b = Bundle::new(&g, y.clone(), z.clone()).unwrap();
    println!(
        "bundle |Y| = 6, |Z| = 8: {} copies of K22, {} non-crossing disjoint edge pairs",
        count_k22(&g, &y, &z).unwrap(),
        noncrossing_disjoint_pairs(&g, &b)
    );
}
