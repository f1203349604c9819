//! Finite point-set builders on which forbidden-copy constraints exist
//! exactly: integer and scaled lattices, and bisector chains realizing the
//! two-point forcing argument.

use crate::geometry::{Configuration, GeometryError, Point};
use crate::linalg;

/// Integer points `0, 1, ..., n - 1` on a line.
pub fn integer_line(n: usize) -> Configuration {
    assert!(n >= 1);
    let points = (0..n)
        .map(|i| Point::new(vec![i as f64]).unwrap())
        .collect();
    Configuration::new(points).unwrap()
}

/// Cartesian product of inclusive integer ranges, one per axis.
pub fn lattice_box(ranges: &[(i64, i64)]) -> Configuration {
    scaled_lattice_box(ranges, &vec![1.0; ranges.len()])
}

/// As [`lattice_box`] with a per-axis step, so copies with rational legs
/// exist exactly on the grid.
pub fn scaled_lattice_box(ranges: &[(i64, i64)], steps: &[f64]) -> Configuration {
    assert!(!ranges.is_empty() && ranges.len() == steps.len());
    assert!(ranges.iter().all(|&(lo, hi)| lo <= hi));
    assert!(steps.iter().all(|&s| s > 0.0));
    let mut points = vec![Vec::new()];
    for (&(lo, hi), &step) in ranges.iter().zip(steps) {
        let mut grown = Vec::new();
        for prefix in &points {
            for i in lo..=hi {
                let mut p = prefix.clone();
                p.push(i as f64 * step);
                grown.push(p);
            }
        }
        points = grown;
    }
    Configuration::new(points.into_iter().map(|p| Point::new(p).unwrap()).collect()).unwrap()
}

/// A chain of waypoints from `start` to `end` with an apex point over each
/// consecutive pair: the apex is on the perpendicular bisector at distance
/// `d` from both, so the distance-`d` graph connects the whole chain
/// whenever consecutive waypoints are closer than `2 d`.
///
/// Needs dimension at least 2 to place the apexes.
pub fn bisector_chain(start: &Point, end: &Point, d: f64) -> Result<Configuration, GeometryError> {
    assert!(d > 0.0);
    if start.dim() != end.dim() {
        return Err(GeometryError::DimensionMismatch(start.dim(), end.dim()));
    }
    if start.dim() < 2 {
        return Err(GeometryError::BadSubspaceDimension {
            subspace: 2,
            ambient: start.dim(),
        });
    }
    let span = linalg::sub(end.coords(), start.coords());
    let total = linalg::norm(&span);
    // Strictly inside 2d per hop so the apex height stays positive.
    let hops = (total / (1.8 * d)).ceil().max(1.0) as usize;

    let mut waypoints: Vec<Vec<f64>> = (0..=hops)
        .map(|i| {
            let t = i as f64 / hops as f64;
            let mut w = start.coords().to_vec();
            linalg::axpy(&mut w, t, &span);
            w
        })
        .collect();

    // A unit normal to the chain direction for apex placement.
    let normal = {
        let dir = linalg::normalized(&span);
        let mut candidate = None;
        for axis in 0..start.dim() {
            let mut e = vec![0.0; start.dim()];
            e[axis] = 1.0;
            if let Some(dir) = &dir {
                let proj = linalg::dot(&e, dir);
                linalg::axpy(&mut e, -proj, dir);
            }
            if let Some(u) = linalg::normalized(&e) {
                candidate = Some(u);
                break;
            }
        }
        candidate.expect("dimension >= 2 always admits a normal")
    };

    let mut points = Vec::new();
    for i in 0..hops {
        let a = waypoints[i].clone();
        let b = waypoints[i + 1].clone();
        let half = linalg::norm(&linalg::sub(&b, &a)) / 2.0;
        let height = (d * d - half * half).max(0.0).sqrt();
        let mut apex = a.clone();
        linalg::axpy(&mut apex, 1.0, &b);
        for x in apex.iter_mut() {
            *x /= 2.0;
        }
        linalg::axpy(&mut apex, height, &normal);
        points.push(apex);
    }
    points.append(&mut waypoints);
    Configuration::new(points.into_iter().map(|p| Point::new(p).unwrap()).collect())
}
