//! Minimum enclosing ball by Welzl's recursive algorithm, valid in any
//! dimension. Boundary sets hold at most `dim + 1` points; the ball through
//! a boundary set has its center in the boundary's affine hull.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use serde::{Deserialize, Serialize};

use super::{dist_unchecked, Configuration, Point};
use crate::linalg;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
}

impl Ball {
    pub fn contains(&self, coords: &[f64], slack: f64) -> bool {
        dist_unchecked(self.center.coords(), coords) <= self.radius + slack
    }
}

/// Radius of the smallest enclosing ball.
pub fn circumradius(c: &Configuration) -> f64 {
    enclosing_ball(c).radius
}

/// Smallest enclosing ball of the configuration.
///
/// The recursion uses a fixed shuffle seed so results are deterministic; the
/// returned radius is re-derived as the maximum center distance, so every
/// point is contained exactly.
pub fn enclosing_ball(c: &Configuration) -> Ball {
    let dim = c.dim();
    let mut order: Vec<usize> = (0..c.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_ba11);
    order.shuffle(&mut rng);
    let pts: Vec<&[f64]> = order.iter().map(|&i| c.coords(i)).collect();

    let mut boundary: Vec<&[f64]> = Vec::new();
    let ball = welzl(&pts, pts.len(), &mut boundary, dim);
    let center = match ball {
        Some((center, _)) => center,
        // Fallback for fully degenerate boundary solves: centroid.
        None => c.centroid().coords().to_vec(),
    };
    let radius = c
        .points()
        .iter()
        .map(|p| dist_unchecked(&center, p.coords()))
        .fold(0.0f64, f64::max);
    Ball {
        center: Point::new(center).unwrap(),
        radius,
    }
}

// Containment slack during the recursion; small relative to coordinates of
// order one, far below the 1e-9 accuracy the invariants ask for.
const CONTAIN_SLACK: f64 = 1e-10;

fn welzl<'a>(
    pts: &[&'a [f64]],
    n: usize,
    boundary: &mut Vec<&'a [f64]>,
    dim: usize,
) -> Option<(Vec<f64>, f64)> {
    if n == 0 || boundary.len() == dim + 1 {
        return ball_from_boundary(boundary);
    }
    let p = pts[n - 1];
    let ball = welzl(pts, n - 1, boundary, dim);
    if let Some((center, radius)) = &ball {
        if dist_unchecked(center, p) <= radius + CONTAIN_SLACK * (1.0 + radius) {
            return ball;
        }
    }
    boundary.push(p);
    let ball = welzl(pts, n - 1, boundary, dim);
    boundary.pop();
    ball
}

/// Smallest ball with all of `boundary` on its surface: the center lies in
/// the affine hull of the boundary points. `None` for an empty or affinely
/// dependent boundary.
fn ball_from_boundary(boundary: &[&[f64]]) -> Option<(Vec<f64>, f64)> {
    let t = boundary.len();
    if t == 0 {
        return None;
    }
    let p0 = boundary[0];
    if t == 1 {
        return Some((p0.to_vec(), 0.0));
    }
    let diffs: Vec<Vec<f64>> = boundary[1..].iter().map(|p| linalg::sub(p, p0)).collect();
    // |center - p_i| = |center - p0| for all i gives the linear system
    // 2 V V^T lambda = (|v_i|^2)_i with center = p0 + V^T lambda.
    let m = diffs.len();
    let mut gram = vec![vec![0.0; m]; m];
    let mut rhs = vec![0.0; m];
    for i in 0..m {
        for j in 0..m {
            gram[i][j] = 2.0 * linalg::dot(&diffs[i], &diffs[j]);
        }
        rhs[i] = linalg::sq_norm(&diffs[i]);
    }
    let lambda = linalg::solve(gram, rhs, 1e-12)?;
    let mut center = p0.to_vec();
    for (l, v) in lambda.iter().zip(&diffs) {
        linalg::axpy(&mut center, *l, v);
    }
    let radius = dist_unchecked(&center, p0);
    Some((center, radius))
}
