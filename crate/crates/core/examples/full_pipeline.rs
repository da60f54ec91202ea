//! Bundles, bundle coloring and an exact certificate on convex and random
//! dense instances.

use std::time::Instant;

use crossmono::generate::{generate, GeneratorKind, GeneratorSpec};
use crossmono::rational::{int, ratio, to_f64};
use crossmono::{end_to_end, BundleParams, EdgeOrder, GeometricGraph};

fn run(label: &str, g: &GeometricGraph, k: usize) {
    let start = Instant::now();
    match end_to_end(g, k, &BundleParams::default(), &EdgeOrder::default()) {
        Ok(out) => {
            let cert = &out.certificate;
            println!(
                "{label} k={k}: mono {}/{} = {:.5}  bound 1/k - c = {:.6}  c = {}  within = {}  (r = {}, {} attempts failed, {:.2?})",
                out.stats.mono,
                out.stats.total,
                to_f64(&out.stats.ratio),
                to_f64(&cert.bound),
                cert.c,
                cert.within_bound,
                out.build.r,
                out.build.failures.len(),
                start.elapsed()
            );
            for (i, b) in out.build.bundles.iter().enumerate() {
                println!("  bundle {}: |Y| = {}, |Z| = {}, {} edges, s = {}", i + 1, b.y.len(), b.z.len(), b.edges.len(), cert.s[i]);
            }
        }
        Err(e) => println!("{label} k={k}: {e} ({:.2?})", start.elapsed()),
    }
}

fn main() {
    for n in [16, 20, 24] {
        let g = generate(&GeneratorSpec::new(GeneratorKind::ConvexPosition, n, int(1), 1)).unwrap();
        for k in [2, 3] {
            run(&format!("convex K{n}"), &g, k);
        }
    }
    for seed in 0..3 {
        let g = generate(&GeneratorSpec::new(GeneratorKind::UniformSquare, 30, ratio(3, 4), seed)).unwrap();
        for k in [2, 3] {
            run(&format!("uniform n=30 d=3/4 seed {seed}"), &g, k);
        }
    }
}
