//! Checking and refining vertex tuples for same-type transversals.

use crossmono::generate::{generate, GeneratorKind, GeneratorSpec};
use crossmono::rational::int;
use crossmono::structure::{same_type_check, same_type_refine, SameTypeConfig, SameTypeVerdict, VertexTuplePartition};

fn main() {
    let g = generate(&GeneratorSpec::new(GeneratorKind::UniformSquare, 48, int(1), 2)).unwrap();
    let parts: Vec<Vec<usize>> = (0..4).map(|i| (12 * i..12 * i + 12).collect()).collect();
    let partition = VertexTuplePartition::new(parts).unwrap();
    match same_type_check(g.points(), &partition) {
        SameTypeVerdict::SameType => println!("already same type"),
        SameTypeVerdict::Violation(v) => {
            println!("violation in parts {:?}: triples {:?} and {:?} have opposite signs", v.parts, v.first, v.second)
        }
    }
    let refined = same_type_refine(g.points(), &partition, &SameTypeConfig::default()).unwrap();
    println!("refined after {} cuts (exhaustive: {}), beta = {}", refined.cuts, refined.exhaustive, refined.beta);
    for (i, p) in refined.partition.parts().iter().enumerate() {
        println!("  X{}' = {p:?}", i + 1);
    }
    println!("check passes: {}", same_type_check(g.points(), &refined.partition).holds());
}
