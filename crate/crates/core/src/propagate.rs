//! Allowed-color-set propagation under "no rainbow copy" constraints.
//!
//! An instance is a finite point set, a total color budget `r`, a list of
//! congruent copies of a forbidden-rainbow configuration (each copy is one
//! constraint tuple), and seed points pinned to single colors. The engine
//! repeatedly applies generalized arc consistency for the predicate "the
//! tuple uses at most `|tuple| - 1` distinct colors":
//!
//! a color `c` can be pruned from point `p` of a tuple exactly when the
//! other tuple points have pairwise disjoint allowed sets (they are forced
//! pairwise distinct) and none of them can take `c` — in that situation any
//! completion with `c` at `p` would be rainbow. The pruning operators are
//! monotone, so the fixpoint is unique regardless of processing order.
//!
//! Forcing claims are always relative to the supplied finite point set;
//! instance builders for integer and scaled lattices and for bisector
//! chains produce sets in which the relevant copies exist exactly.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{congruent_copies, Configuration, GeometryError, Tolerance};

pub mod instances;

/// Colors are bitmask positions, so the total color count is capped at 64.
pub const MAX_COLORS: u64 = 64;

#[derive(Error, Debug)]
pub enum PropagateError {
    #[error("color count must be in 1..=64, got {0}")]
    BadColorCount(u64),
    #[error("seed index {index} out of range for {points} points")]
    SeedIndexOutOfRange { index: usize, points: usize },
    #[error("seed color {color} not below color count {num_colors}")]
    SeedColorOutOfRange { color: u64, num_colors: u64 },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Per-point sets of still-permitted colors, as bitmasks over `0..r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AllowedSetMap {
    masks: Vec<u64>,
    num_colors: u64,
}

impl AllowedSetMap {
    fn full(points: usize, num_colors: u64) -> Self {
        let full = if num_colors == 64 {
            u64::MAX
        } else {
            (1u64 << num_colors) - 1
        };
        AllowedSetMap {
            masks: vec![full; points],
            num_colors,
        }
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn num_colors(&self) -> u64 {
        self.num_colors
    }

    pub fn mask(&self, point: usize) -> u64 {
        self.masks[point]
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn allows(&self, point: usize, color: u64) -> bool {
        self.masks[point] & (1 << color) != 0
    }

    pub fn cardinality(&self, point: usize) -> u32 {
        self.masks[point].count_ones()
    }

    pub fn allowed_colors(&self, point: usize) -> Vec<u64> {
        (0..self.num_colors)
            .filter(|&c| self.allows(point, c))
            .collect()
    }

    /// Subset relation per point, the monotonicity order of propagation.
    pub fn refines(&self, other: &AllowedSetMap) -> bool {
        self.masks.len() == other.masks.len()
            && self
                .masks
                .iter()
                .zip(&other.masks)
                .all(|(a, b)| a & b == *a)
    }
}

/// A propagation instance over a fixed finite point set.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Instance {
    points: Configuration,
    num_colors: u64,
    constraints: Vec<Vec<usize>>,
    seeds: Vec<(usize, u64)>,
}

impl Instance {
    pub fn points(&self) -> &Configuration {
        &self.points
    }

    pub fn num_colors(&self) -> u64 {
        self.num_colors
    }

    /// Constraint tuples: index sets of congruent copies of the forbidden
    /// rainbow configuration.
    pub fn constraints(&self) -> &[Vec<usize>] {
        &self.constraints
    }

    pub fn seeds(&self) -> &[(usize, u64)] {
        &self.seeds
    }

    fn initial_map(&self) -> AllowedSetMap {
        let mut map = AllowedSetMap::full(self.points.len(), self.num_colors);
        for &(index, color) in &self.seeds {
            map.masks[index] = 1 << color;
        }
        map
    }
}

/// Enumerates all congruent copies of `forbidden` in `points` as constraint
/// tuples and initializes allowed sets (full everywhere, singletons at the
/// seeds).
pub fn build_instance(
    points: Configuration,
    forbidden: &Configuration,
    num_colors: u64,
    seeds: &[(usize, u64)],
    tol: Tolerance,
) -> Result<Instance, PropagateError> {
    if num_colors == 0 || num_colors > MAX_COLORS {
        return Err(PropagateError::BadColorCount(num_colors));
    }
    for &(index, color) in seeds {
        if index >= points.len() {
            return Err(PropagateError::SeedIndexOutOfRange {
                index,
                points: points.len(),
            });
        }
        if color >= num_colors {
            return Err(PropagateError::SeedColorOutOfRange {
                color,
                num_colors,
            });
        }
    }
    let constraints = congruent_copies(&points, forbidden, tol)
        .into_iter()
        .map(|m| m.point_set())
        .collect();
    Ok(Instance {
        points,
        num_colors,
        constraints,
        seeds: seeds.to_vec(),
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PropagationResult {
    pub map: AllowedSetMap,
    /// Number of full constraint scans performed, including the final scan
    /// that observed no change.
    pub rounds: u32,
    pub contradiction: bool,
    pub prunings: u64,
    /// False only when a round cap stopped the run before the fixpoint.
    pub fixpoint: bool,
}

/// Runs rounds of propagation to the fixpoint (see the module docs for the
/// pruning rule). Within a round all prunings are computed against the
/// round's starting map and applied together, so a round is
/// order-independent by construction.
///
/// Propagation continues past empty sets to the genuine fixpoint; the
/// pruning operators are monotone, so that fixpoint is unique and the
/// contradiction flag is simply a property of the final map.
pub fn propagate_fixpoint(instance: &Instance) -> PropagationResult {
    propagate_rounds(instance, u32::MAX)
}

/// As [`propagate_fixpoint`] with a cap on the number of rounds.
pub fn propagate_rounds(instance: &Instance, max_rounds: u32) -> PropagationResult {
    let mut current = instance.initial_map();
    let mut rounds = 0u32;
    let mut prunings = 0u64;
    let mut fixpoint = false;
    while rounds < max_rounds {
        rounds += 1;
        let mut next = current.clone();
        for tuple in &instance.constraints {
            for (slot, &p) in tuple.iter().enumerate() {
                if let Some(union) = forced_union(&current, tuple, slot) {
                    let pruned = next.masks[p] & !union;
                    if pruned != 0 {
                        prunings += pruned.count_ones() as u64;
                        next.masks[p] &= union;
                    }
                }
            }
        }
        let changed = next != current;
        current = next;
        if !changed {
            fixpoint = true;
            break;
        }
    }
    let contradiction = current.masks.contains(&0);
    PropagationResult {
        map: current,
        rounds,
        contradiction,
        prunings,
        fixpoint,
    }
}

/// Chaotic-iteration variant: processes constraints in the given order and
/// applies each pruning immediately, sweeping until a full pass changes
/// nothing. Reaches the same fixpoint as the round-batched engine; used to
/// demonstrate order-confluence.
pub fn propagate_fixpoint_ordered(instance: &Instance, order: &[usize]) -> PropagationResult {
    let mut map = instance.initial_map();
    let mut prunings = 0u64;
    let mut rounds = 0u32;
    loop {
        rounds += 1;
        let mut changed = false;
        for &ci in order {
            let tuple = &instance.constraints[ci];
            for (slot, &p) in tuple.iter().enumerate() {
                if let Some(union) = forced_union(&map, tuple, slot) {
                    let pruned = map.masks[p] & !union;
                    if pruned != 0 {
                        prunings += pruned.count_ones() as u64;
                        map.masks[p] &= union;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            let contradiction = map.masks.contains(&0);
            return PropagationResult {
                map,
                rounds,
                contradiction,
                prunings,
                fixpoint: true,
            };
        }
    }
}

/// When the tuple points other than `slot` have pairwise disjoint allowed
/// sets, every completion colors them pairwise distinct, so the point at
/// `slot` must reuse one of their colors: returns the union mask. Returns
/// `None` when no pruning is justified.
fn forced_union(map: &AllowedSetMap, tuple: &[usize], slot: usize) -> Option<u64> {
    let mut union = 0u64;
    for (s, &q) in tuple.iter().enumerate() {
        if s == slot {
            continue;
        }
        let m = map.masks[q];
        if union & m != 0 {
            // Two other points may share a color; the tuple can always be
            // made non-rainbow without involving `slot`.
            return None;
        }
        union |= m;
    }
    Some(union)
}

/// Connected components of the distance-`d` graph by union-find. Under a
/// "no rainbow two-point copy at distance d" hypothesis every point in the
/// seed's component is forced to the seed color.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FloodFill {
    pub component: Vec<usize>,
    pub seed_component: usize,
}

impl FloodFill {
    pub fn forced(&self, point: usize) -> bool {
        self.component[point] == self.seed_component
    }

    pub fn num_components(&self) -> usize {
        let mut ids: Vec<usize> = self.component.clone();
        ids.sort_unstable();
        ids.dedup();
        ids.len()
    }
}

pub fn flood_fill_two_point(
    points: &Configuration,
    seed_index: usize,
    d: f64,
    tol: Tolerance,
) -> Result<FloodFill, PropagateError> {
    if seed_index >= points.len() {
        return Err(PropagateError::SeedIndexOutOfRange {
            index: seed_index,
            points: points.len(),
        });
    }
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();

    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    for i in 0..n {
        for j in i + 1..n {
            let dist = crate::geometry::distance(points.point(i), points.point(j)).unwrap();
            if tol.matches(dist, d) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    // Normalize component ids to the smallest member index.
    let component: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    let canonical: Vec<usize> = component
        .iter()
        .map(|&root| (0..n).find(|&j| component[j] == root).unwrap())
        .collect();
    let seed_component = canonical[seed_index];
    Ok(FloodFill {
        component: canonical,
        seed_component,
    })
}

/// Slab statistics: points grouped by their first coordinate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SlabStats {
    pub x: f64,
    pub points: usize,
    pub singletons: usize,
    pub at_most_two: usize,
    pub full: usize,
}

/// Summary of a propagation run: how constrained each point ended up,
/// overall and per slab of constant first coordinate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ForcingReport {
    pub rounds: u32,
    pub contradiction: bool,
    pub prunings: u64,
    /// `histogram[c]` counts points whose allowed set has cardinality `c`.
    pub cardinality_histogram: Vec<usize>,
    pub slabs: Vec<SlabStats>,
}

pub fn forcing_report(instance: &Instance, result: &PropagationResult) -> ForcingReport {
    let map = &result.map;
    let full_size = instance.num_colors as u32;
    let mut histogram = vec![0usize; instance.num_colors as usize + 1];
    for i in 0..map.len() {
        histogram[map.cardinality(i) as usize] += 1;
    }

    let mut slab_keys: Vec<i64> = instance
        .points
        .points()
        .iter()
        .map(|p| slab_key(p.coords()[0]))
        .collect();
    let point_keys = slab_keys.clone();
    slab_keys.sort_unstable();
    slab_keys.dedup();

    let slabs = slab_keys
        .iter()
        .map(|&key| {
            let members: Vec<usize> = (0..map.len()).filter(|&i| point_keys[i] == key).collect();
            SlabStats {
                x: key as f64 / SLAB_SCALE,
                points: members.len(),
                singletons: members.iter().filter(|&&i| map.cardinality(i) == 1).count(),
                at_most_two: members.iter().filter(|&&i| map.cardinality(i) <= 2).count(),
                full: members
                    .iter()
                    .filter(|&&i| map.cardinality(i) == full_size)
                    .count(),
            }
        })
        .collect();

    ForcingReport {
        rounds: result.rounds,
        contradiction: result.contradiction,
        prunings: result.prunings,
        cardinality_histogram: histogram,
        slabs,
    }
}

const SLAB_SCALE: f64 = 1e6;

fn slab_key(x: f64) -> i64 {
    (x * SLAB_SCALE).round() as i64
}
