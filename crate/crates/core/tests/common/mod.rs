//! Shared independent oracles for the integration suites. Everything here
//! deliberately avoids the library's search paths: congruence is checked by
//! exhausting subsets and permutations, Bell numbers come from the Bell
//! triangle, and widths come from dense direction sweeps.

// Each integration test binary compiles this module separately and uses a
// different subset of the oracles.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gallai_core::geometry::{distance, Configuration, Point, Tolerance};

/// Bell numbers `B(0..=n)` by the Bell-triangle recurrence.
pub fn bell_numbers(n: usize) -> Vec<u128> {
    let mut bells = vec![1u128];
    let mut row = vec![1u128];
    for _ in 1..=n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for &v in &row {
            next.push(next.last().unwrap() + v);
        }
        bells.push(next[0]);
        row = next;
    }
    bells
}

/// Every k-subset congruent to `needle`, found by trying all index subsets
/// and all point correspondences. Exponential, for cross-checks only.
pub fn brute_force_congruent_sets(
    haystack: &Configuration,
    needle: &Configuration,
    tol: Tolerance,
) -> BTreeSet<Vec<usize>> {
    let n = haystack.len();
    let k = needle.len();
    let mut out = BTreeSet::new();
    if k > n {
        return out;
    }
    let mut subset: Vec<usize> = Vec::with_capacity(k);
    subsets(n, k, 0, &mut subset, &mut |s| {
        if some_permutation_matches(haystack, needle, s, tol) {
            out.insert(s.to_vec());
        }
    });
    out
}

fn subsets(n: usize, k: usize, from: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if acc.len() == k {
        f(acc);
        return;
    }
    let remaining = k - acc.len();
    for i in from..=n.saturating_sub(remaining) {
        acc.push(i);
        subsets(n, k, i + 1, acc, f);
        acc.pop();
    }
}

fn some_permutation_matches(
    haystack: &Configuration,
    needle: &Configuration,
    subset: &[usize],
    tol: Tolerance,
) -> bool {
    let k = subset.len();
    let mut perm: Vec<usize> = (0..k).collect();
    permutations(&mut perm, 0, &mut |p| {
        for a in 0..k {
            for b in a + 1..k {
                let dh = distance(
                    haystack.point(subset[p[a]]),
                    haystack.point(subset[p[b]]),
                )
                .unwrap();
                let dn = distance(needle.point(a), needle.point(b)).unwrap();
                if !tol.matches(dh, dn) {
                    return false;
                }
            }
        }
        true
    })
}

fn permutations(perm: &mut Vec<usize>, at: usize, check: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if at == perm.len() {
        return check(perm);
    }
    for i in at..perm.len() {
        perm.swap(at, i);
        if permutations(perm, at + 1, check) {
            perm.swap(at, i);
            return true;
        }
        perm.swap(at, i);
    }
    false
}

/// Minimal directional extent of a planar configuration by a dense sweep
/// over directions in `[0, pi)`.
pub fn sweep_width_2d(c: &Configuration, steps: usize) -> f64 {
    assert_eq!(c.dim(), 2);
    let mut best = f64::INFINITY;
    for s in 0..steps {
        let theta = std::f64::consts::PI * s as f64 / steps as f64;
        let (ux, uy) = (theta.cos(), theta.sin());
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for p in c.points() {
            let v = p.coords()[0] * ux + p.coords()[1] * uy;
            lo = lo.min(v);
            hi = hi.max(v);
        }
        best = best.min(hi - lo);
    }
    best
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random configuration of `n` distinct points in `[-spread, spread]^dim`.
pub fn random_configuration(r: &mut impl Rng, n: usize, dim: usize, spread: f64) -> Configuration {
    loop {
        let points: Vec<Point> = (0..n)
            .map(|_| {
                Point::new((0..dim).map(|_| r.gen_range(-spread..=spread)).collect()).unwrap()
            })
            .collect();
        if let Ok(c) = Configuration::new(points) {
            return c;
        }
    }
}

/// Haar-ish random rotation for invariance tests: orthonormalized Gaussian
/// rows, built locally so the oracle does not share library code.
pub fn random_rotation(r: &mut impl Rng, dim: usize) -> Vec<Vec<f64>> {
    loop {
        let rows: Vec<Vec<f64>> = (0..dim)
            .map(|_| (0..dim).map(|_| gaussian(r)).collect())
            .collect();
        if let Some(q) = gram_schmidt(&rows) {
            return q;
        }
    }
}

fn gaussian(r: &mut impl Rng) -> f64 {
    let u1: f64 = r.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = r.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

fn gram_schmidt(rows: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for row in rows {
        let mut v = row.clone();
        for b in &basis {
            let c: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
            for (x, y) in v.iter_mut().zip(b) {
                *x -= c * y;
            }
        }
        let n: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n < 1e-9 {
            return None;
        }
        for x in v.iter_mut() {
            *x /= n;
        }
        basis.push(v);
    }
    Some(basis)
}

pub fn apply_isometry(c: &Configuration, rotation: &[Vec<f64>], shift: &[f64]) -> Configuration {
    let points: Vec<Point> = c
        .points()
        .iter()
        .map(|p| {
            let coords: Vec<f64> = rotation
                .iter()
                .zip(shift)
                .map(|(row, s)| {
                    row.iter()
                        .zip(p.coords())
                        .map(|(a, b)| a * b)
                        .sum::<f64>()
                        + s
                })
                .collect();
            Point::new(coords).unwrap()
        })
        .collect();
    Configuration::new_degenerate(points).unwrap()
}
