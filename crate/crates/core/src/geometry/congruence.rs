//! Congruent-copy search: find every index tuple of a haystack whose pairwise
//! distances match a target configuration within tolerance.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{dist_unchecked, Configuration, Tolerance};

/// A found congruent copy.
///
/// `indices[i]` is the haystack index matched to target point `i`; the
/// correspondence doubles as the congruence evidence (each pair of matched
/// indices realizes the target's pairwise distance). Matches are
/// de-duplicated by point set, so a target with a non-trivial isometry group
/// yields one match per point set with an arbitrary witness correspondence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Match {
    indices: Vec<usize>,
}

impl Match {
    pub(crate) fn from_indices(indices: Vec<usize>) -> Self {
        Match { indices }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Canonical form: the matched haystack indices in increasing order.
    pub fn point_set(&self) -> Vec<usize> {
        let mut s = self.indices.clone();
        s.sort_unstable();
        s
    }
}

/// Sorted multiset of squared pairwise distances; an isometry- and
/// relabeling-invariant certificate for congruence checks.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DistanceProfile {
    sq_distances: Vec<f64>,
}

impl DistanceProfile {
    pub fn of(c: &Configuration) -> Self {
        let n = c.len();
        let mut sq = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                let d = dist_unchecked(c.coords(i), c.coords(j));
                sq.push(d * d);
            }
        }
        sq.sort_by(f64::total_cmp);
        DistanceProfile { sq_distances: sq }
    }

    pub fn len(&self) -> usize {
        self.sq_distances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sq_distances.is_empty()
    }

    pub fn sq_distances(&self) -> &[f64] {
        &self.sq_distances
    }

    /// Entry-wise match of the sorted length multisets under `tol`.
    pub fn matches(&self, other: &DistanceProfile, tol: Tolerance) -> bool {
        self.sq_distances.len() == other.sq_distances.len()
            && self
                .sq_distances
                .iter()
                .zip(&other.sq_distances)
                .all(|(a, b)| tol.matches(a.sqrt(), b.sqrt()))
    }
}

/// All congruent copies of `target` inside `haystack`, de-duplicated by
/// point set and returned in canonical (sorted index set) order.
///
/// Dimensions of haystack and target may differ; only pairwise distances
/// matter. The search is a backtracking walk that places the endpoints of
/// the target distance rarest in the haystack first.
pub fn congruent_copies(
    haystack: &Configuration,
    target: &Configuration,
    tol: Tolerance,
) -> Vec<Match> {
    congruent_copies_filtered(haystack, target, tol, |_| true, SearchControl::All)
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum SearchControl {
    All,
    FirstOnly,
}

/// Backtracking core shared with the colored-pattern searchers.
///
/// `accept_partial` sees the haystack indices chosen so far (in internal
/// search order) and may veto an extension; it must be a predicate of the
/// index set only, otherwise de-duplication by point set is unsound.
pub(crate) fn congruent_copies_filtered(
    haystack: &Configuration,
    target: &Configuration,
    tol: Tolerance,
    mut accept_partial: impl FnMut(&[usize]) -> bool,
    control: SearchControl,
) -> Vec<Match> {
    let n = haystack.len();
    let k = target.len();
    if k > n {
        return Vec::new();
    }

    let hay_dist = pairwise_distances(haystack);
    let tgt_dist = pairwise_distances(target);
    let order = slot_order(&hay_dist, &tgt_dist, k, tol);

    let mut search = Search {
        hay_dist: &hay_dist,
        tgt_dist: &tgt_dist,
        order: &order,
        tol,
        control,
        chosen: Vec::with_capacity(k),
        used: vec![false; n],
        found: BTreeMap::new(),
    };
    search.run(&mut accept_partial);
    search.found.into_values().collect()
}

struct Search<'a> {
    hay_dist: &'a [Vec<f64>],
    tgt_dist: &'a [Vec<f64>],
    order: &'a [usize],
    tol: Tolerance,
    control: SearchControl,
    chosen: Vec<usize>,
    used: Vec<bool>,
    found: BTreeMap<Vec<usize>, Match>,
}

impl Search<'_> {
    fn run(&mut self, accept_partial: &mut impl FnMut(&[usize]) -> bool) {
        self.dfs(accept_partial);
    }

    /// Returns true to stop the whole search (first-only mode).
    fn dfs(&mut self, accept_partial: &mut impl FnMut(&[usize]) -> bool) -> bool {
        let slot = self.chosen.len();
        if slot == self.order.len() {
            // Map search order back to target order.
            let mut indices = vec![0usize; self.order.len()];
            for (s, &tgt_idx) in self.order.iter().enumerate() {
                indices[tgt_idx] = self.chosen[s];
            }
            let m = Match { indices };
            self.found.entry(m.point_set()).or_insert(m);
            return self.control == SearchControl::FirstOnly;
        }
        let t_new = self.order[slot];
        'candidates: for j in 0..self.used.len() {
            if self.used[j] {
                continue;
            }
            for (s, &c) in self.chosen.iter().enumerate() {
                let t_old = self.order[s];
                if !self.tol.matches(self.hay_dist[j][c], self.tgt_dist[t_new][t_old]) {
                    continue 'candidates;
                }
            }
            self.chosen.push(j);
            self.used[j] = true;
            let stop = accept_partial(&self.chosen) && self.dfs(accept_partial);
            self.chosen.pop();
            self.used[j] = false;
            if stop {
                return true;
            }
        }
        false
    }
}

#[allow(clippy::needless_range_loop)]
fn pairwise_distances(c: &Configuration) -> Vec<Vec<f64>> {
    let n = c.len();
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = dist_unchecked(c.coords(i), c.coords(j));
            m[i][j] = d;
            m[j][i] = d;
        }
    }
    m
}

/// Number of haystack point pairs realizing length `d` within `tol`.
fn match_count(hay_dist: &[Vec<f64>], d: f64, tol: Tolerance) -> usize {
    let n = hay_dist.len();
    let mut cnt = 0;
    for i in 0..n {
        cnt += hay_dist[i][i + 1..]
            .iter()
            .filter(|&&h| tol.matches(h, d))
            .count();
    }
    cnt
}

/// Order target slots so the rarest target distance is pinned first and each
/// later slot is maximally constrained by the already-placed ones.
#[allow(clippy::needless_range_loop)]
fn slot_order(hay_dist: &[Vec<f64>], tgt_dist: &[Vec<f64>], k: usize, tol: Tolerance) -> Vec<usize> {
    if k == 1 {
        return vec![0];
    }
    let mut best_pair = (0usize, 1usize);
    let mut best_count = usize::MAX;
    for a in 0..k {
        for b in a + 1..k {
            let cnt = match_count(hay_dist, tgt_dist[a][b], tol);
            if cnt < best_count {
                best_count = cnt;
                best_pair = (a, b);
            }
        }
    }
    let mut order = vec![best_pair.0, best_pair.1];
    let mut placed = vec![false; k];
    placed[best_pair.0] = true;
    placed[best_pair.1] = true;
    while order.len() < k {
        // Most selective next slot: smallest haystack match count against
        // any already-placed slot.
        let mut next = usize::MAX;
        let mut next_score = usize::MAX;
        for v in 0..k {
            if placed[v] {
                continue;
            }
            let score = order
                .iter()
                .map(|&u| match_count(hay_dist, tgt_dist[v][u], tol))
                .min()
                .unwrap();
            if score < next_score || (score == next_score && v < next) {
                next_score = score;
                next = v;
            }
        }
        placed[next] = true;
        order.push(next);
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{hamming_configuration, q5_layer3, shapes};

    #[test]
    fn too_small_haystack_is_empty() {
        let hay = shapes::two_points(1.0);
        let needle = shapes::ell(3);
        assert!(congruent_copies(&hay, &needle, Tolerance::default()).is_empty());
    }

    #[test]
    fn square_found_in_grid() {
        // 2x2 integer grid contains exactly one unit square.
        let hay = shapes::unit_square();
        let matches = congruent_copies(&hay, &shapes::unit_square(), Tolerance::default());
        assert_eq!(matches.len(), 1);
        assert_eq!(matches[0].point_set(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn named_square_and_tetrahedron_in_layer3() {
        let layer = q5_layer3();
        let hay = hamming_configuration(&layer);
        let by_name = |s: &str| {
            layer
                .iter()
                .position(|p| p.positions_string() == s)
                .unwrap()
        };

        let squares = congruent_copies(&hay, &shapes::unit_square(), Tolerance::default());
        let want: Vec<usize> = {
            let mut v = vec![by_name("123"), by_name("125"), by_name("234"), by_name("245")];
            v.sort_unstable();
            v
        };
        assert!(squares.iter().any(|m| m.point_set() == want));

        let tetra = congruent_copies(&hay, &shapes::regular_tetrahedron(1.0), Tolerance::default());
        let want: Vec<usize> = {
            let mut v = vec![by_name("123"), by_name("234"), by_name("124"), by_name("134")];
            v.sort_unstable();
            v
        };
        assert!(tetra.iter().any(|m| m.point_set() == want));
    }

    #[test]
    fn matches_carry_valid_correspondence() {
        let hay = Configuration::from_rows(&[
            &[0.0, 0.0],
            &[1.0, 0.0],
            &[1.0, 1.0],
            &[0.0, 1.0],
            &[3.0, 0.5],
        ])
        .unwrap();
        let needle = shapes::unit_square();
        let tol = Tolerance::default();
        for m in congruent_copies(&hay, &needle, tol) {
            for a in 0..needle.len() {
                for b in a + 1..needle.len() {
                    let dn = dist_unchecked(needle.coords(a), needle.coords(b));
                    let dh = dist_unchecked(
                        hay.coords(m.indices()[a]),
                        hay.coords(m.indices()[b]),
                    );
                    assert!(tol.matches(dn, dh));
                }
            }
        }
    }
}
