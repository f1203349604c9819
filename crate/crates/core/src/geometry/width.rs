//! Box-width (minimal directional extent) and minimal projection diameter.
//!
//! In the plane the width is exact via the convex hull (the minimal extent
//! is attained with one supporting line flush against a hull edge). In
//! dimension three and higher both quantities are certified upper bounds
//! from multi-start local descent over unit directions / orthonormal
//! frames, with the restart count recorded in the result.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use serde::{Deserialize, Serialize};

use super::{diameter, Configuration, GeometryError};
use crate::linalg;

pub const DEFAULT_RESTARTS: u32 = 64;
const DEFAULT_SEED: u64 = 0x5eed_71d7;

/// Width value plus whether it is exact or a multi-start upper bound.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct WidthEstimate {
    pub value: f64,
    pub exact: bool,
    pub restarts: u32,
}

/// Smallest extent of the configuration over all unit directions: the least
/// `a` such that the points fit in a slab of thickness `a`.
pub fn box_width(c: &Configuration) -> WidthEstimate {
    box_width_with(c, DEFAULT_RESTARTS, DEFAULT_SEED)
}

pub fn box_width_with(c: &Configuration, restarts: u32, seed: u64) -> WidthEstimate {
    match c.dim() {
        1 => {
            let xs: Vec<f64> = c.points().iter().map(|p| p.coords()[0]).collect();
            let lo = xs.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            WidthEstimate {
                value: hi - lo,
                exact: true,
                restarts: 0,
            }
        }
        2 => WidthEstimate {
            value: caliper_width_2d(c),
            exact: true,
            restarts: 0,
        },
        _ => WidthEstimate {
            value: direction_descent(c, restarts, seed),
            exact: false,
            restarts,
        },
    }
}

/// Exact width of a planar point set: minimum over hull edges of the
/// farthest vertex distance to the edge's supporting line.
fn caliper_width_2d(c: &Configuration) -> f64 {
    let pts: Vec<(f64, f64)> = c
        .points()
        .iter()
        .map(|p| (p.coords()[0], p.coords()[1]))
        .collect();
    let hull = convex_hull(&pts);
    if hull.len() <= 2 {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    for i in 0..hull.len() {
        let a = hull[i];
        let b = hull[(i + 1) % hull.len()];
        let (ex, ey) = (b.0 - a.0, b.1 - a.1);
        let len = (ex * ex + ey * ey).sqrt();
        let mut farthest = 0.0f64;
        for &p in &hull {
            let cross = (ex * (p.1 - a.1) - ey * (p.0 - a.0)).abs() / len;
            farthest = farthest.max(cross);
        }
        best = best.min(farthest);
    }
    best
}

/// Andrew's monotone chain; returns hull vertices in counter-clockwise
/// order, collinear interior points removed. Collinear input collapses to
/// the two extreme points.
fn convex_hull(pts: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut p = pts.to_vec();
    p.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    p.dedup();
    if p.len() <= 2 {
        return p;
    }
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(f64, f64)> = Vec::new();
    for &q in &p {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 0.0 {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<(f64, f64)> = Vec::new();
    for &q in p.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 0.0 {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        // All points collinear.
        return vec![p[0], p[p.len() - 1]];
    }
    lower
}

fn extent(pts: &[&[f64]], u: &[f64]) -> f64 {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for p in pts {
        let s = linalg::dot(p, u);
        lo = lo.min(s);
        hi = hi.max(s);
    }
    hi - lo
}

fn extreme_indices(pts: &[&[f64]], u: &[f64]) -> (usize, usize) {
    let mut imin = 0;
    let mut imax = 0;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (i, p) in pts.iter().enumerate() {
        let s = linalg::dot(p, u);
        if s < lo {
            lo = s;
            imin = i;
        }
        if s > hi {
            hi = s;
            imax = i;
        }
    }
    (imin, imax)
}

fn gaussian(rng: &mut impl Rng) -> f64 {
    // Box-Muller transform.
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

fn random_unit(dim: usize, rng: &mut impl Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| gaussian(rng)).collect();
        if let Some(u) = linalg::normalized(&v) {
            return u;
        }
    }
}

/// Multi-start projected subgradient descent of the extent over the unit
/// sphere of directions. Every starting point only improves, so the result
/// is always a valid upper bound on the true width.
fn direction_descent(c: &Configuration, restarts: u32, seed: u64) -> f64 {
    let pts: Vec<&[f64]> = c.points().iter().map(|p| p.coords()).collect();
    let dim = c.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = f64::INFINITY;
    let mut starts: Vec<Vec<f64>> = Vec::new();
    for axis in 0..dim {
        let mut e = vec![0.0; dim];
        e[axis] = 1.0;
        starts.push(e);
    }
    for _ in 0..restarts {
        starts.push(random_unit(dim, &mut rng));
    }
    for u0 in starts {
        best = best.min(refine_direction(&pts, u0));
    }
    best
}

fn refine_direction(pts: &[&[f64]], mut u: Vec<f64>) -> f64 {
    let mut f = extent(pts, &u);
    let mut step = 0.5;
    for _ in 0..400 {
        let (imin, imax) = extreme_indices(pts, &u);
        // The extent behaves locally as <x_max - x_min, u>; descend along
        // the tangential component of that gradient.
        let g = linalg::sub(pts[imax], pts[imin]);
        let mut gt = g.clone();
        let gu = linalg::dot(&g, &u);
        linalg::axpy(&mut gt, -gu, &u);
        let gn = linalg::norm(&gt);
        if gn < 1e-14 {
            break;
        }
        let mut cand = u.clone();
        linalg::axpy(&mut cand, -step / gn, &gt);
        let cand = match linalg::normalized(&cand) {
            Some(c) => c,
            None => break,
        };
        let fc = extent(pts, &cand);
        if fc < f {
            u = cand;
            f = fc;
        } else {
            step *= 0.5;
            if step < 1e-13 {
                break;
            }
        }
    }
    f
}

/// Upper bound on the minimal diameter over all projections onto
/// `subspace_dim`-dimensional subspaces.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ProjectionBound {
    pub value: f64,
    pub subspace_dim: usize,
    pub restarts: u32,
    pub exact: bool,
}

/// Minimal projected diameter over sampled and locally-refined orthonormal
/// frames. Exact when `subspace_dim` equals the ambient dimension (identity
/// projection) and in the rank-one planar case (hull sweep); otherwise an
/// upper bound.
pub fn projection_diameter(
    c: &Configuration,
    subspace_dim: usize,
    restarts: u32,
    seed: u64,
) -> Result<ProjectionBound, GeometryError> {
    let n = c.dim();
    if subspace_dim == 0 || subspace_dim > n {
        return Err(GeometryError::BadSubspaceDimension {
            subspace: subspace_dim,
            ambient: n,
        });
    }
    if subspace_dim == n {
        return Ok(ProjectionBound {
            value: diameter(c),
            subspace_dim,
            restarts: 0,
            exact: true,
        });
    }
    if subspace_dim == 1 {
        // The diameter of a projection onto a line is exactly the extent in
        // that direction, so this is the box-width problem.
        let w = box_width_with(c, restarts, seed);
        return Ok(ProjectionBound {
            value: w.value,
            subspace_dim,
            restarts: w.restarts,
            exact: w.exact,
        });
    }
    let pts: Vec<&[f64]> = c.points().iter().map(|p| p.coords()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = f64::INFINITY;

    let mut frames: Vec<Vec<Vec<f64>>> = Vec::new();
    let identity_like: Vec<Vec<f64>> = (0..subspace_dim)
        .map(|i| {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            e
        })
        .collect();
    frames.push(identity_like);
    for _ in 0..restarts {
        frames.push(random_frame(n, subspace_dim, &mut rng));
    }
    for frame in frames {
        best = best.min(refine_frame(&pts, frame, &mut rng));
    }
    Ok(ProjectionBound {
        value: best,
        subspace_dim,
        restarts,
        exact: false,
    })
}

fn random_frame(n: usize, m: usize, rng: &mut impl Rng) -> Vec<Vec<f64>> {
    loop {
        let rows: Vec<Vec<f64>> = (0..m)
            .map(|_| (0..n).map(|_| gaussian(rng)).collect())
            .collect();
        let basis = linalg::orthonormal_basis(&rows, 1e-9);
        if basis.len() == m {
            return basis;
        }
    }
}

fn projected_diameter(pts: &[&[f64]], frame: &[Vec<f64>]) -> f64 {
    let proj: Vec<Vec<f64>> = pts
        .iter()
        .map(|p| frame.iter().map(|f| linalg::dot(p, f)).collect())
        .collect();
    let mut best = 0.0f64;
    for i in 0..proj.len() {
        for j in i + 1..proj.len() {
            best = best.max(linalg::norm(&linalg::sub(&proj[i], &proj[j])));
        }
    }
    best
}

/// Shrinking random perturbations of the frame, re-orthonormalized each try.
fn refine_frame(pts: &[&[f64]], mut frame: Vec<Vec<f64>>, rng: &mut impl Rng) -> f64 {
    let n = frame[0].len();
    let m = frame.len();
    let mut f = projected_diameter(pts, &frame);
    let mut sigma = 0.3;
    let mut fails = 0u32;
    for _ in 0..600 {
        let perturbed: Vec<Vec<f64>> = frame
            .iter()
            .map(|row| {
                let mut r = row.clone();
                for x in r.iter_mut() {
                    *x += sigma * gaussian(rng);
                }
                r
            })
            .collect();
        let basis = linalg::orthonormal_basis(&perturbed, 1e-9);
        if basis.len() != m {
            continue;
        }
        let _ = n;
        let fc = projected_diameter(pts, &basis);
        if fc < f {
            frame = basis;
            f = fc;
            fails = 0;
        } else {
            fails += 1;
            if fails >= 8 {
                sigma *= 0.6;
                fails = 0;
                if sigma < 1e-10 {
                    break;
                }
            }
        }
    }
    f
}
