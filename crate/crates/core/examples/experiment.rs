//! Batch experiment: each pipeline on a few instances, written as JSON,
//! CSV and SVG into a temporary directory.

use crossmono::generate::{generate, GeneratorKind, GeneratorSpec};
use crossmono::rational::{int, ratio};
use crossmono::report::{run_experiment, ExperimentConfig, Pipeline, CSV_HEADER};

fn main() {
    let dir = std::env::temp_dir().join("crossmono-experiment");
    let instances = [
        ("convex24", GeneratorSpec::new(GeneratorKind::ConvexPosition, 24, int(1), 0)),
        ("grid30", GeneratorSpec::new(GeneratorKind::PerturbedGrid, 30, ratio(3, 4), 1)),
        ("clustered30", GeneratorSpec::new(GeneratorKind::Clustered, 30, ratio(3, 4), 2)),
    ];
    println!("{CSV_HEADER}");
    for (name, spec) in &instances {
        let g = generate(spec).unwrap();
        for pipeline in Pipeline::ALL {
            let mut config = ExperimentConfig::new(format!("{name}-{pipeline}"), pipeline, 2, 0);
            config.out_dir = Some(dir.clone());
            config.svg = true;
            let report = run_experiment(&g, &config).unwrap();
            println!("{}", report.csv_row());
        }
    }
    println!("files written to {}", dir.display());
}
