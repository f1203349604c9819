//! Exhaustive, proof-grade verification of two finite combinatorial facts,
//! both in exact arithmetic:
//!
//! 1. Every set partition of the ten scaled-hypercube points with three
//!    non-zero entries contains a same-class pair at distance exactly one,
//!    or a unit square meeting four distinct classes. Partitions stand for
//!    colorings up to relabeling (sound because both predicates are
//!    relabeling-invariant), so one pass over all `Bell(10) = 115975`
//!    partitions covers every color count at once.
//! 2. A constraint system over exact rationals showing that a coloring of
//!    squared radii can avoid monochromatic and rainbow 3-term unit
//!    progressions only on small ground sets; on the built-in 22-point set
//!    the system is unsatisfiable.

use std::time::Instant;

use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{q5_layer3, Configuration, ExactHammingPoint, Point};

#[derive(Error, Debug)]
pub enum FiniteVerifyError {
    #[error("partition enumeration supports 1..=14 elements, got {0}")]
    SizeOutOfRange(usize),
    #[error("restricted-growth string is not canonical at position {0}")]
    NotRestrictedGrowth(usize),
    #[error("triple ({0}, {1}, {2}) is not potential by the sufficient condition")]
    NotPotential(Rational64, Rational64, Rational64),
    #[error("potential triples need non-negative entries")]
    NegativeEntry,
}

/// A set partition in canonical restricted-growth form: `rgs[0] = 0` and
/// `rgs[i] <= 1 + max(rgs[..i])`. Encodes a coloring up to color relabeling.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SetPartition {
    rgs: Vec<u32>,
}

impl SetPartition {
    pub fn from_rgs(rgs: Vec<u32>) -> Result<Self, FiniteVerifyError> {
        if rgs.is_empty() || rgs[0] != 0 {
            return Err(FiniteVerifyError::NotRestrictedGrowth(0));
        }
        let mut max = 0;
        for (i, &v) in rgs.iter().enumerate().skip(1) {
            if v > max + 1 {
                return Err(FiniteVerifyError::NotRestrictedGrowth(i));
            }
            max = max.max(v);
        }
        Ok(SetPartition { rgs })
    }

    /// Canonicalizes an arbitrary labeling by first occurrence.
    pub fn from_labels<T: PartialEq>(labels: &[T]) -> Self {
        let mut seen: Vec<&T> = Vec::new();
        let rgs = labels
            .iter()
            .map(|l| {
                if let Some(pos) = seen.iter().position(|s| *s == l) {
                    pos as u32
                } else {
                    seen.push(l);
                    (seen.len() - 1) as u32
                }
            })
            .collect();
        SetPartition { rgs }
    }

    pub fn rgs(&self) -> &[u32] {
        &self.rgs
    }

    pub fn len(&self) -> usize {
        self.rgs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn num_blocks(&self) -> usize {
        self.rgs.iter().map(|&v| v as usize + 1).max().unwrap_or(0)
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (i, &v) in self.rgs.iter().enumerate() {
            blocks[v as usize].push(i);
        }
        blocks
    }
}

/// Streams every partition of `n` elements exactly once, in lexicographic
/// restricted-growth order. `n` is capped at 14 (about 1.9e8 partitions).
pub fn enumerate_partitions(n: usize) -> Result<PartitionIter, FiniteVerifyError> {
    if n == 0 || n > 14 {
        return Err(FiniteVerifyError::SizeOutOfRange(n));
    }
    Ok(PartitionIter {
        rgs: vec![0; n],
        fresh: true,
        done: false,
    })
}

pub struct PartitionIter {
    rgs: Vec<u32>,
    fresh: bool,
    done: bool,
}

impl Iterator for PartitionIter {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        if self.fresh {
            self.fresh = false;
            return Some(SetPartition {
                rgs: self.rgs.clone(),
            });
        }
        // Lexicographic successor: bump the rightmost position that can
        // still grow, reset everything after it to zero.
        let n = self.rgs.len();
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                return None;
            }
            i -= 1;
            let prefix_max = self.rgs[..i].iter().copied().max().unwrap();
            if self.rgs[i] <= prefix_max {
                self.rgs[i] += 1;
                for v in &mut self.rgs[i + 1..] {
                    *v = 0;
                }
                return Some(SetPartition {
                    rgs: self.rgs.clone(),
                });
            }
        }
    }
}

/// Pairs of layer-3 points at distance exactly one (position sets sharing
/// exactly two elements), as indices into [`q5_layer3`].
pub fn q5_unit_pair_indices() -> Vec<[usize; 2]> {
    let layer = q5_layer3();
    let mut pairs = Vec::new();
    for i in 0..layer.len() {
        for j in i + 1..layer.len() {
            if layer[i].at_unit_distance(&layer[j]) {
                pairs.push([i, j]);
            }
        }
    }
    pairs
}

/// All unit squares inside the ten-point layer, found by an exact scan over
/// the 210 four-point subsets: four sides of squared distance 1 and two
/// disjoint diagonals of squared distance 2.
pub fn q5_unit_squares() -> Vec<[ExactHammingPoint; 4]> {
    let layer = q5_layer3();
    q5_unit_square_indices()
        .into_iter()
        .map(|idx| idx.map(|i| layer[i]))
        .collect()
}

/// As [`q5_unit_squares`], as indices into [`q5_layer3`].
pub fn q5_unit_square_indices() -> Vec<[usize; 4]> {
    let layer = q5_layer3();
    let n = layer.len();
    let mut squares = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    if let Some(sq) = classify_square(&layer, [a, b, c, d]) {
                        squares.push(sq);
                    }
                }
            }
        }
    }
    squares
}

/// Checks the exact squared-distance pattern of a unit square: among the six
/// pairs, four have doubled squared distance 2 (sides) and two have 4
/// (diagonals), and the diagonals are vertex-disjoint.
fn classify_square(layer: &[ExactHammingPoint], idx: [usize; 4]) -> Option<[usize; 4]> {
    let mut diagonals = Vec::with_capacity(2);
    for x in 0..4 {
        for y in x + 1..4 {
            match layer[idx[x]].sq_distance_times_2(&layer[idx[y]]) {
                2 => {}
                4 => diagonals.push((x, y)),
                _ => return None,
            }
        }
    }
    if diagonals.len() != 2 {
        return None;
    }
    let (d0, d1) = (diagonals[0], diagonals[1]);
    let disjoint = d0.0 != d1.0 && d0.0 != d1.1 && d0.1 != d1.0 && d0.1 != d1.1;
    if disjoint {
        Some(idx)
    } else {
        None
    }
}

/// Report of the exhaustive layer case check.
///
/// In the default ten-point mode every partition is enumerated and
/// classified, so `case1_hits + case2_hits + counterexamples = partitions_checked
/// = Bell(10)`. In the full 32-point mode the counts refer to closed search
/// branches of a pruned scan (each covering many partitions), not to single
/// partitions.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Q5LemmaReport {
    pub partitions_checked: u64,
    pub case1_hits: u64,
    pub case2_hits: u64,
    pub counterexamples: Vec<SetPartition>,
    pub elapsed_ms: u64,
    pub full_cube: bool,
}

/// Exhausts all `Bell(10) = 115975` partitions of the ten layer points and
/// classifies each: Case 1 when some class contains a unit-distance pair,
/// else Case 2 when some unit square meets four distinct classes. Any
/// partition matching neither is recorded as a counterexample (none exist).
pub fn verify_q5_lemma() -> Q5LemmaReport {
    let start = Instant::now();
    let pairs = q5_unit_pair_indices();
    let squares = q5_unit_square_indices();

    let mut report = Q5LemmaReport {
        partitions_checked: 0,
        case1_hits: 0,
        case2_hits: 0,
        counterexamples: Vec::new(),
        elapsed_ms: 0,
        full_cube: false,
    };
    for partition in enumerate_partitions(10).unwrap() {
        report.partitions_checked += 1;
        let rgs = partition.rgs();
        if pairs.iter().any(|&[i, j]| rgs[i] == rgs[j]) {
            report.case1_hits += 1;
        } else if squares
            .iter()
            .any(|&[a, b, c, d]| all_distinct(rgs[a], rgs[b], rgs[c], rgs[d]))
        {
            report.case2_hits += 1;
        } else {
            report.counterexamples.push(partition);
        }
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

fn all_distinct(a: u32, b: u32, c: u32, d: u32) -> bool {
    a != b && a != c && a != d && b != c && b != d && c != d
}

/// Full 32-point variant: a depth-first scan over canonical partition
/// prefixes of the whole cube, closing a branch as soon as an assigned unit
/// pair is monochromatic (Case 1) or a fully assigned unit square is rainbow
/// (Case 2). The ten layer points are ordered first, so the scan never runs
/// deeper than them and stays near `Bell(10)` cost.
pub fn verify_q5_lemma_full() -> Q5LemmaReport {
    let start = Instant::now();
    let layer = q5_layer3();
    let mut points = layer.clone();
    for p in crate::geometry::q5_full() {
        if !points.contains(&p) {
            points.push(p);
        }
    }
    let n = points.len();

    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if points[i].at_unit_distance(&points[j]) {
                pairs.push([j, i]); // larger index first: checked on assignment of j
            }
        }
    }
    let mut squares = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    if classify_square(&points, [a, b, c, d]).is_some() {
                        squares.push([d, a, b, c]); // larger index first
                    }
                }
            }
        }
    }

    let mut report = Q5LemmaReport {
        partitions_checked: 0,
        case1_hits: 0,
        case2_hits: 0,
        counterexamples: Vec::new(),
        elapsed_ms: 0,
        full_cube: true,
    };

    let mut rgs: Vec<u32> = Vec::with_capacity(n);
    dfs_full(
        &mut rgs,
        n,
        &pairs,
        &squares,
        &mut report,
    );
    report.partitions_checked = report.case1_hits + report.case2_hits
        + report.counterexamples.len() as u64;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    report
}

fn dfs_full(
    rgs: &mut Vec<u32>,
    n: usize,
    pairs: &[[usize; 2]],
    squares: &[[usize; 4]],
    report: &mut Q5LemmaReport,
) {
    let depth = rgs.len();
    // Closure checks against the freshly assigned last position.
    if depth > 0 {
        let last = depth - 1;
        if pairs
            .iter()
            .filter(|p| p[0] == last)
            .any(|p| rgs[p[0]] == rgs[p[1]])
        {
            report.case1_hits += 1;
            return;
        }
        if squares
            .iter()
            .filter(|s| s[0] == last)
            .any(|s| all_distinct(rgs[s[0]], rgs[s[1]], rgs[s[2]], rgs[s[3]]))
        {
            report.case2_hits += 1;
            return;
        }
    }
    if depth == n {
        report
            .counterexamples
            .push(SetPartition { rgs: rgs.clone() });
        return;
    }
    let max = rgs.iter().copied().max().map_or(0, |m| m + 1);
    for color in 0..=max {
        rgs.push(color);
        dfs_full(rgs, n, pairs, squares, report);
        rgs.pop();
    }
}

/// Squared norms `(y1, y2, y3)` of three candidate collinear unit-spaced
/// points, held as exact rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PotentialTriple {
    pub y1: Rational64,
    pub y2: Rational64,
    pub y3: Rational64,
}

impl PotentialTriple {
    pub fn new(y1: Rational64, y2: Rational64, y3: Rational64) -> Result<Self, FiniteVerifyError> {
        if y1.is_negative() || y2.is_negative() || y3.is_negative() {
            return Err(FiniteVerifyError::NegativeEntry);
        }
        Ok(PotentialTriple { y1, y2, y3 })
    }

    pub fn from_integers(y1: i64, y2: i64, y3: i64) -> Result<Self, FiniteVerifyError> {
        Self::new(y1.into(), y2.into(), y3.into())
    }

    /// The sufficient condition, evaluated exactly: `y1 + y3 = 2 y2 + 2`
    /// and `sqrt(y2) >= 2 max(|y1 - y2|, |y2 - y3|, 1)`, the latter squared
    /// to stay in rational arithmetic.
    pub fn is_potential(&self) -> bool {
        let two = Rational64::from(2);
        if self.y1 + self.y3 != two * self.y2 + two {
            return false;
        }
        let gap = (self.y1 - self.y2)
            .abs()
            .max((self.y2 - self.y3).abs())
            .max(Rational64::from(1));
        let bound = two * gap;
        self.y2 >= bound * bound
    }

    /// Realizes the triple as three collinear points in the plane with
    /// consecutive distances one and squared norms `y1, y2, y3`:
    /// the middle point sits at `(sqrt(y2), 0)` and the unit step direction
    /// is `(cos a, -sin a)` with `cos a = (y2 + 1 - y1) / (2 sqrt(y2))`.
    pub fn realize(&self) -> Result<Configuration, FiniteVerifyError> {
        if !self.is_potential() {
            return Err(FiniteVerifyError::NotPotential(self.y1, self.y2, self.y3));
        }
        let y1 = self.y1.to_f64().unwrap();
        let y2 = self.y2.to_f64().unwrap();
        let root = y2.sqrt();
        let cos_a = (y2 + 1.0 - y1) / (2.0 * root);
        let sin_a = (1.0 - cos_a * cos_a).max(0.0).sqrt();
        let points = vec![
            Point::new(vec![root - cos_a, sin_a]).unwrap(),
            Point::new(vec![root, 0.0]).unwrap(),
            Point::new(vec![root + cos_a, -sin_a]).unwrap(),
        ];
        Ok(Configuration::new(points).unwrap())
    }
}

/// One not-all-equal and not-all-distinct constraint over ground-set
/// indices. The first and last index may coincide (the symmetric triple
/// `(y, y2, y)`), in which case the constraint degenerates to a plain
/// disequality between the two distinct elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleConstraint {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl TripleConstraint {
    /// Not-all-equal and not-all-distinct, on color values.
    pub fn satisfied(&self, c: &[u32]) -> bool {
        let (a, b, d) = (c[self.i], c[self.j], c[self.k]);
        let all_equal = a == b && b == d;
        let all_distinct = a != b && b != d && a != d;
        !all_equal && !all_distinct
    }
}

/// Ground set of exact rational offsets (squared radii relative to a large
/// base) plus every constraint induced by an exactly matching triple.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TripleCsp {
    offsets: Vec<Rational64>,
    constraints: Vec<TripleConstraint>,
}

impl TripleCsp {
    /// Assembles an instance from explicit parts, e.g. a thinned constraint
    /// subset of a built system. Indices must be in range.
    pub fn with_constraints(offsets: Vec<Rational64>, constraints: Vec<TripleConstraint>) -> Self {
        assert!(constraints
            .iter()
            .all(|c| c.i < offsets.len() && c.j < offsets.len() && c.k < offsets.len()));
        TripleCsp {
            offsets,
            constraints,
        }
    }

    pub fn offsets(&self) -> &[Rational64] {
        &self.offsets
    }

    pub fn constraints(&self) -> &[TripleConstraint] {
        &self.constraints
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    /// An explicit base value making every induced triple genuinely
    /// potential: large enough that the square-root side condition holds
    /// across the whole offset window.
    pub fn sufficient_base(&self) -> Rational64 {
        sufficient_base(&self.offsets)
    }
}

/// Builds the constraint system over `offsets`: every ordered triple
/// `(o1, o2, o3)` with `o1 + o3 = 2 o2 + 2` exactly (canonicalized to
/// `o1 <= o3`) contributes one not-all-equal / not-all-distinct constraint
/// on the corresponding colors. The offsets are read as `y = N + offset`
/// for a symbolically large `N`; [`TripleCsp::sufficient_base`] reports an
/// explicit `N` under which all triples are potential.
pub fn build_triple_csp(offsets: &[Rational64]) -> TripleCsp {
    let mut sorted: Vec<Rational64> = offsets.to_vec();
    sorted.sort();
    sorted.dedup();

    let two = Rational64::from(2);
    let mut constraints = Vec::new();
    for (i, &o1) in sorted.iter().enumerate() {
        for (k, &o3) in sorted.iter().enumerate().skip(i) {
            let doubled = o1 + o3 - two;
            // o2 = (o1 + o3 - 2) / 2 must be in the ground set.
            let o2 = doubled / two;
            if let Ok(j) = sorted.binary_search(&o2) {
                constraints.push(TripleConstraint { i, j, k });
            }
        }
    }
    TripleCsp {
        offsets: sorted,
        constraints,
    }
}

fn sufficient_base(offsets: &[Rational64]) -> Rational64 {
    if offsets.is_empty() {
        return Rational64::from(4);
    }
    let min = *offsets.iter().min().unwrap();
    let max = *offsets.iter().max().unwrap();
    let span = (max - min).max(Rational64::from(1));
    let four = Rational64::from(4);
    four * span * span - min
}

/// The 22-point ground set used by the built-in unsatisfiability run:
/// `{k, k + 1/3, k + 2/3 : k = 0..6}` together with `1/2`.
pub fn builtin_proof_offsets() -> Vec<Rational64> {
    let third = Rational64::new(1, 3);
    let mut offsets = Vec::new();
    for k in 0..=6i64 {
        for j in 0..3i64 {
            offsets.push(Rational64::from(k) + third * Rational64::from(j));
        }
    }
    offsets.push(Rational64::new(1, 2));
    offsets.sort();
    offsets
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CspOutcome {
    Unsat { nodes: u64 },
    Sat { witness: SetPartition, nodes: u64 },
}

impl CspOutcome {
    pub fn nodes(&self) -> u64 {
        match self {
            CspOutcome::Unsat { nodes } | CspOutcome::Sat { nodes, .. } => *nodes,
        }
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self, CspOutcome::Unsat { .. })
    }
}

/// Backtracking search over canonical restricted-growth prefixes. A color
/// is assigned to one ground element at a time; every constraint whose
/// highest index just got assigned is checked immediately, so the two
/// partially-assigned cases (two equal colors force the third to differ,
/// two distinct colors restrict the third to those two) prune exactly as
/// arc consistency would.
pub fn solve_triple_csp(csp: &TripleCsp) -> CspOutcome {
    let n = csp.offsets.len();
    if n == 0 {
        return CspOutcome::Sat {
            witness: SetPartition { rgs: vec![0] },
            nodes: 0,
        };
    }
    // Constraints indexed by their highest ground index.
    let mut by_last: Vec<Vec<&TripleConstraint>> = vec![Vec::new(); n];
    for c in &csp.constraints {
        by_last[c.i.max(c.j).max(c.k)].push(c);
    }

    let mut rgs: Vec<u32> = Vec::with_capacity(n);
    let mut nodes = 0u64;

    fn dfs(
        rgs: &mut Vec<u32>,
        n: usize,
        by_last: &[Vec<&TripleConstraint>],
        nodes: &mut u64,
    ) -> bool {
        let depth = rgs.len();
        if depth == n {
            return true;
        }
        let max = rgs.iter().copied().max().map_or(0, |m| m + 1);
        for color in 0..=max {
            rgs.push(color);
            *nodes += 1;
            let ok = by_last[depth].iter().all(|c| c.satisfied(rgs));
            if ok && dfs(rgs, n, by_last, nodes) {
                return true;
            }
            rgs.pop();
        }
        false
    }

    if dfs(&mut rgs, n, &by_last, &mut nodes) {
        CspOutcome::Sat {
            witness: SetPartition { rgs },
            nodes,
        }
    } else {
        CspOutcome::Unsat { nodes }
    }
}
