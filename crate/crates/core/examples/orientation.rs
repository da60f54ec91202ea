//! Exact orientation, segment crossing and order types.

use crossmono::geometry::{order_type, orientation, same_order_type, segments_cross};
use crossmono::{Point, PointSet};

fn main() {
    let (p, q, r) = (Point::new(0, 0), Point::new(4, 0), Point::new(1, 3));
    println!("orientation(p, q, r) = {:?}", orientation(p, q, r));
    println!("orientation(p, r, q) = {:?}", orientation(p, r, q));

    // Extreme coordinates still give exact signs.
    let big = Point::new(i32::MAX, i32::MAX - 1);
    println!("extreme orientation = {:?}", orientation(Point::new(i32::MIN, i32::MIN), big, Point::new(i32::MAX, i32::MAX)));

    let diag = (Point::new(0, 0), Point::new(2, 2));
    let anti = (Point::new(0, 2), Point::new(2, 0));
    let touching = (Point::new(0, 0), Point::new(3, 1));
    println!("diagonals cross: {}", segments_cross(diag, anti));
    println!("segments sharing an endpoint cross: {}", segments_cross(diag, touching));

    match PointSet::new(vec![Point::new(0, 0), Point::new(1, 1), Point::new(2, 2)]) {
        Ok(_) => println!("unexpected: collinear set accepted"),
        Err(e) => println!("rejected: {e}"),
    }

    let square = PointSet::new(vec![Point::new(0, 0), Point::new(10, 0), Point::new(10, 10), Point::new(0, 10)]).unwrap();
    let kite = PointSet::new(vec![Point::new(0, 0), Point::new(20, 1), Point::new(21, 30), Point::new(-2, 9)]).unwrap();
    let with_interior = PointSet::new(vec![Point::new(0, 0), Point::new(10, 0), Point::new(5, 9), Point::new(5, 3)]).unwrap();
    let ot = order_type(&square).unwrap();
    println!("order type of the square has {} signed triples", ot.len());
    println!("square ~ kite under identity: {}", same_order_type(&square, &kite, &[0, 1, 2, 3]).unwrap());
    println!("square ~ triangle-with-interior-point: {}", same_order_type(&square, &with_interior, &[0, 1, 2, 3]).unwrap());
}
