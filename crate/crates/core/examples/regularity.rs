//! ε-regular pairs and the witness-splitting box partition.

use crossmono::generate::{generate, GeneratorKind, GeneratorSpec};
use crossmono::rational::{ratio, to_f64};
use crossmono::structure::{
    box_density, epsilon_regular_pair, random_balanced_partition, regular_box_partition, PairVerdict, RegularityConfig,
};
use crossmono::{GeometricGraph, Point, PointSet};

fn main() {
    // Planted irregularity: A and B are complete to each other on their first
    // halves only.
    let pts: Vec<Point> = (0..24).map(|i| Point::new(i, i * i)).collect();
    let a: Vec<usize> = (0..12).collect();
    let b: Vec<usize> = (12..24).collect();
    let edges = (0..6).flat_map(|u| (12..18).map(move |v| (u, v)));
    let g = GeometricGraph::new(PointSet::new(pts).unwrap(), edges).unwrap();
    let eps = ratio(1, 4);
    let config = RegularityConfig::default();
    match epsilon_regular_pair(&g, &a, &b, &eps, &config).unwrap() {
        PairVerdict::NotRegular(w) => println!("planted pair irregular: X = {:?}, Y = {:?}, gap = {}", w.x, w.y, w.gap()),
        other => println!("planted pair: {other:?}"),
    }
    let boxes = regular_box_partition(&g, &[a, b], &eps, &config).unwrap();
    println!(
        "planted: {} boxes after {} splits, irregular mass {} <= eps * m^2 = {}: {}",
        boxes.boxes.len(),
        boxes.splits,
        boxes.irregular_mass,
        to_f64(&eps) * boxes.total_mass as f64,
        boxes.converged
    );

    let g = generate(&GeneratorSpec::new(GeneratorKind::UniformSquare, 24, ratio(3, 4), 4)).unwrap();
    let partition = random_balanced_partition(&g, 4, 9).unwrap();
    let boxes = regular_box_partition(&g, &partition.parts, &ratio(1, 8), &config).unwrap();
    println!(
        "random n = 24, r = 4: {} boxes, {} splits, converged {}",
        boxes.boxes.len(),
        boxes.splits,
        boxes.converged
    );
    let heaviest = boxes.boxes.iter().max_by_key(|b| b.mass()).unwrap();
    println!("heaviest box: sizes {:?}, density {}", heaviest.factors.iter().map(Vec::len).collect::<Vec<_>>(), box_density(&g, heaviest).unwrap());
}
