//! Prefabricated configurations used throughout tests, benchmarks and demos.

use super::{Configuration, Point};

fn cfg(rows: Vec<Vec<f64>>) -> Configuration {
    let points = rows.into_iter().map(|r| Point::new(r).unwrap()).collect();
    Configuration::new(points).unwrap()
}

/// Two points at distance `d` on a line.
pub fn two_points(d: f64) -> Configuration {
    cfg(vec![vec![0.0], vec![d]])
}

/// `m` collinear points with consecutive points at distance one.
pub fn ell(m: usize) -> Configuration {
    assert!(m >= 1);
    cfg((0..m).map(|i| vec![i as f64]).collect())
}

/// Axis-aligned unit square in the plane.
pub fn unit_square() -> Configuration {
    square(1.0)
}

pub fn square(side: f64) -> Configuration {
    rectangle(side, side)
}

/// Axis-aligned rectangle with side lengths `a` (x) and `b` (y).
pub fn rectangle(a: f64, b: f64) -> Configuration {
    cfg(vec![
        vec![0.0, 0.0],
        vec![a, 0.0],
        vec![a, b],
        vec![0.0, b],
    ])
}

pub fn equilateral_triangle(side: f64) -> Configuration {
    cfg(vec![
        vec![0.0, 0.0],
        vec![side, 0.0],
        vec![side / 2.0, side * 3f64.sqrt() / 2.0],
    ])
}

/// Right triangle with legs `a` and `b`, right angle at the origin.
pub fn right_triangle(a: f64, b: f64) -> Configuration {
    cfg(vec![vec![0.0, 0.0], vec![a, 0.0], vec![0.0, b]])
}

/// Regular tetrahedron with side `s`, ordered base-first.
pub fn regular_tetrahedron(s: f64) -> Configuration {
    cfg(vec![
        vec![0.0, 0.0, 0.0],
        vec![s, 0.0, 0.0],
        vec![s / 2.0, s * 3f64.sqrt() / 2.0, 0.0],
        vec![s / 2.0, s * 3f64.sqrt() / 6.0, s * (2f64 / 3.0).sqrt()],
    ])
}
