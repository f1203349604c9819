//! Closed-form coloring rules of `E^n` and randomized samplers that test a
//! rule against forbidden monochromatic / rainbow patterns.
//!
//! The block family stripes space along the first coordinate in half-open
//! blocks `[(i-1)a, ia)` colored `i mod num_colors`; the grid family does
//! this per axis and flattens the color tuple; the spherical family colors
//! by `floor(|x|^2) mod m`. Samplers place uniformly random congruent
//! copies (Haar rotation plus uniform translation) and report the first
//! violating witness, or a clean report with the trial count and seed.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{dist_unchecked, Configuration, Point, Tolerance};
use crate::linalg;

#[derive(Error, Debug)]
pub enum ColoringError {
    #[error("block length must be positive, got {0}")]
    NonPositiveBlock(f64),
    #[error("need at least one color")]
    NoColors,
    #[error("grid rule uses {axes} axes but the point has dimension {dim}")]
    TooFewAxes { axes: usize, dim: usize },
    #[error("modulus must be at least 1")]
    BadModulus,
    #[error("region interval {0} is empty or not finite")]
    BadRegionInterval(usize),
    #[error("region has dimension {region} but the target needs {target}")]
    RegionTooSmall { region: usize, target: usize },
    #[error("cannot parse region {0:?}: expected \"x0,x1;y0,y1;...\"")]
    RegionParse(String),
    #[error("trials must be at least 1")]
    NoTrials,
}

/// Color identifier. Grid-block tuples are flattened to a single id by
/// mixed-radix encoding with the first axis least significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColorId(pub u64);

/// A total rule assigning a color to every point.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum ColoringRule {
    /// Stripes `[(i-1)a, ia) x E^(n-1)` colored `i mod num_colors`.
    Block { a: f64, num_colors: u64 },
    /// Per-axis blocks of side `h` on the first `num_axes` coordinates,
    /// each axis colored mod `colors_per_axis`, tuple flattened.
    GridBlock {
        h: f64,
        colors_per_axis: u64,
        num_axes: usize,
    },
    /// `floor(|x|^2) mod m`.
    SphericalFloorMod { m: u64 },
    Constant { color: ColorId },
    /// Finite table with tolerance lookup; points matching no entry get
    /// `default` so the rule stays total.
    Table {
        entries: Vec<(Point, ColorId)>,
        tol: Tolerance,
        default: ColorId,
    },
}

impl ColoringRule {
    /// Validates rule parameters against a point dimension.
    pub fn check(&self, dim: usize) -> Result<(), ColoringError> {
        match self {
            ColoringRule::Block { a, num_colors } => {
                if *a <= 0.0 || !a.is_finite() {
                    return Err(ColoringError::NonPositiveBlock(*a));
                }
                if *num_colors == 0 {
                    return Err(ColoringError::NoColors);
                }
                Ok(())
            }
            ColoringRule::GridBlock {
                h,
                colors_per_axis,
                num_axes,
            } => {
                if *h <= 0.0 || !h.is_finite() {
                    return Err(ColoringError::NonPositiveBlock(*h));
                }
                if *colors_per_axis == 0 {
                    return Err(ColoringError::NoColors);
                }
                if *num_axes == 0 || *num_axes > dim {
                    return Err(ColoringError::TooFewAxes {
                        axes: *num_axes,
                        dim,
                    });
                }
                Ok(())
            }
            ColoringRule::SphericalFloorMod { m } => {
                if *m == 0 {
                    Err(ColoringError::BadModulus)
                } else {
                    Ok(())
                }
            }
            ColoringRule::Constant { .. } | ColoringRule::Table { .. } => Ok(()),
        }
    }

    /// Color of a point. Panics if the rule parameters are invalid for the
    /// point's dimension; call [`ColoringRule::check`] first on user input.
    pub fn color(&self, p: &Point) -> ColorId {
        match self {
            ColoringRule::Block { a, num_colors } => {
                ColorId(block_color(p.coords()[0], *a, *num_colors))
            }
            ColoringRule::GridBlock {
                h,
                colors_per_axis,
                num_axes,
            } => {
                let tuple = grid_block_tuple(p, *h, *colors_per_axis, *num_axes);
                ColorId(flatten_tuple(&tuple, *colors_per_axis))
            }
            ColoringRule::SphericalFloorMod { m } => {
                ColorId((p.sq_norm().floor() as i64).rem_euclid(*m as i64) as u64)
            }
            ColoringRule::Constant { color } => *color,
            ColoringRule::Table {
                entries,
                tol,
                default,
            } => entries
                .iter()
                .find(|(q, _)| {
                    q.dim() == p.dim()
                        && tol.matches(dist_unchecked(p.coords(), q.coords()), 0.0)
                })
                .map(|(_, c)| *c)
                .unwrap_or(*default),
        }
    }

    /// True when the color depends only on the distance to the origin.
    /// Tables are checked by scanning radius buckets of their entries.
    pub fn is_spherical_rule(&self) -> bool {
        match self {
            ColoringRule::SphericalFloorMod { .. } | ColoringRule::Constant { .. } => true,
            ColoringRule::Block { .. } | ColoringRule::GridBlock { .. } => false,
            ColoringRule::Table { entries, tol, .. } => {
                for (i, (p, cp)) in entries.iter().enumerate() {
                    for (q, cq) in &entries[i + 1..] {
                        let rp = p.sq_norm().sqrt();
                        let rq = q.sq_norm().sqrt();
                        if tol.matches(rp, rq) && cp != cq {
                            return false;
                        }
                    }
                }
                true
            }
        }
    }
}

/// Block index along the first coordinate is `floor(x1 / a) + 1`; the color
/// is that index mod `num_colors`, normalized to `0..num_colors`.
pub fn block_color(x1: f64, a: f64, num_colors: u64) -> u64 {
    debug_assert!(a > 0.0 && num_colors > 0);
    let i = (x1 / a).floor() as i64 + 1;
    i.rem_euclid(num_colors as i64) as u64
}

/// Per-axis block colors on the first `num_axes` coordinates.
pub fn grid_block_tuple(p: &Point, h: f64, colors_per_axis: u64, num_axes: usize) -> Vec<u64> {
    assert!(
        num_axes >= 1 && num_axes <= p.dim(),
        "grid rule uses {num_axes} axes on a point of dimension {}",
        p.dim()
    );
    p.coords()[..num_axes]
        .iter()
        .map(|&x| block_color(x, h, colors_per_axis))
        .collect()
}

/// Mixed-radix flattening of a color tuple, first axis least significant.
/// Bijective from `{0..radix}^len` onto `{0..radix^len}`.
pub fn flatten_tuple(tuple: &[u64], radix: u64) -> u64 {
    let mut flat = 0u64;
    for &t in tuple.iter().rev() {
        flat = flat * radix + t;
    }
    flat
}

/// Number of colors the block construction needs against a target of
/// diameter `b` with box-width `a`: `ceil(b / a) + 1`.
pub fn recommended_block_colors(diameter: f64, box_width: f64) -> u64 {
    assert!(box_width > 0.0 && diameter >= 0.0);
    (diameter / box_width).ceil() as u64 + 1
}

/// Axis-aligned sampling box, one closed interval per coordinate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Region {
    intervals: Vec<(f64, f64)>,
}

impl Region {
    pub fn new(intervals: Vec<(f64, f64)>) -> Result<Self, ColoringError> {
        if intervals.is_empty() {
            return Err(ColoringError::BadRegionInterval(0));
        }
        for (i, &(lo, hi)) in intervals.iter().enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(ColoringError::BadRegionInterval(i));
            }
        }
        Ok(Region { intervals })
    }

    /// Cube `[-half, half]^dim`.
    pub fn centered_cube(half: f64, dim: usize) -> Self {
        Region::new(vec![(-half, half); dim]).unwrap()
    }

    /// Parses `"x0,x1;y0,y1;..."`.
    pub fn parse(s: &str) -> Result<Self, ColoringError> {
        let mut intervals = Vec::new();
        for part in s.split(';') {
            let nums: Vec<&str> = part.split(',').collect();
            if nums.len() != 2 {
                return Err(ColoringError::RegionParse(s.to_string()));
            }
            let lo: f64 = nums[0]
                .trim()
                .parse()
                .map_err(|_| ColoringError::RegionParse(s.to_string()))?;
            let hi: f64 = nums[1]
                .trim()
                .parse()
                .map_err(|_| ColoringError::RegionParse(s.to_string()))?;
            intervals.push((lo, hi));
        }
        Region::new(intervals)
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    fn sample(&self, rng: &mut impl Rng) -> Vec<f64> {
        self.intervals
            .iter()
            .map(|&(lo, hi)| if lo == hi { lo } else { rng.gen_range(lo..=hi) })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternKind {
    Monochromatic,
    Rainbow,
}

/// A congruent placement on which the rule violated the tested predicate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Witness {
    pub trial: u64,
    pub points: Vec<Vec<f64>>,
    pub colors: Vec<ColorId>,
}

/// Outcome of a sampling run; `witness` is `None` for a clean run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ViolationReport {
    pub rule: ColoringRule,
    pub kind: PatternKind,
    pub target_label: Option<String>,
    pub trials: u64,
    pub trials_run: u64,
    pub seed: u64,
    pub witness: Option<Witness>,
}

impl ViolationReport {
    pub fn is_clean(&self) -> bool {
        self.witness.is_none()
    }

    /// Independent re-check of a reported witness: the placement must still
    /// be congruent to `target` within `tol` and the recomputed colors must
    /// satisfy the violated predicate. Clean reports re-verify trivially.
    pub fn reverify(&self, target: &Configuration, tol: Tolerance) -> bool {
        let Some(w) = &self.witness else {
            return true;
        };
        if w.points.len() != target.len() {
            return false;
        }
        for i in 0..w.points.len() {
            for j in i + 1..w.points.len() {
                let placed = dist_unchecked(&w.points[i], &w.points[j]);
                let original = dist_unchecked(target.coords(i), target.coords(j));
                if !tol.matches(placed, original) {
                    return false;
                }
            }
        }
        let colors: Vec<ColorId> = w
            .points
            .iter()
            .map(|p| self.rule.color(&Point::new(p.clone()).unwrap()))
            .collect();
        if colors != w.colors {
            return false;
        }
        match self.kind {
            PatternKind::Monochromatic => colors.iter().all(|c| *c == colors[0]),
            PatternKind::Rainbow => {
                let mut sorted = colors.clone();
                sorted.sort_unstable();
                sorted.windows(2).all(|w| w[0] != w[1])
            }
        }
    }
}

/// Samples random congruent placements of `target` in `region` and returns
/// the first monochromatic witness under `rule`, or a clean report.
pub fn verify_no_mono(
    rule: &ColoringRule,
    target: &Configuration,
    region: &Region,
    trials: u64,
    seed: u64,
) -> Result<ViolationReport, ColoringError> {
    sample_for_violation(rule, target, region, trials, seed, PatternKind::Monochromatic)
}

/// As [`verify_no_mono`] with the all-distinct-colors predicate.
pub fn verify_no_rainbow(
    rule: &ColoringRule,
    target: &Configuration,
    region: &Region,
    trials: u64,
    seed: u64,
) -> Result<ViolationReport, ColoringError> {
    sample_for_violation(rule, target, region, trials, seed, PatternKind::Rainbow)
}

fn sample_for_violation(
    rule: &ColoringRule,
    target: &Configuration,
    region: &Region,
    trials: u64,
    seed: u64,
    kind: PatternKind,
) -> Result<ViolationReport, ColoringError> {
    if trials == 0 {
        return Err(ColoringError::NoTrials);
    }
    let dim = region.dim();
    if target.dim() > dim {
        return Err(ColoringError::RegionTooSmall {
            region: dim,
            target: target.dim(),
        });
    }
    rule.check(dim)?;

    let embedded = target.zero_padded(dim);
    let centroid = embedded.centroid();
    let centered: Vec<Vec<f64>> = embedded
        .points()
        .iter()
        .map(|p| linalg::sub(p.coords(), centroid.coords()))
        .collect();

    let mut report = ViolationReport {
        rule: rule.clone(),
        kind,
        target_label: target.label().map(String::from),
        trials,
        trials_run: 0,
        seed,
        witness: None,
    };

    for trial in 0..trials {
        // Counter-based per-trial streams keep results independent of any
        // batching or processing order.
        let mut rng = trial_rng(seed, trial);
        let rotation = haar_rotation(dim, &mut rng);
        let shift = region.sample(&mut rng);
        let placed: Vec<Vec<f64>> = centered
            .iter()
            .map(|x| {
                let mut y: Vec<f64> =
                    rotation.iter().map(|row| linalg::dot(row, x)).collect();
                linalg::axpy(&mut y, 1.0, &shift);
                y
            })
            .collect();
        let colors: Vec<ColorId> = placed
            .iter()
            .map(|p| rule.color(&Point::new(p.clone()).unwrap()))
            .collect();
        let violated = match kind {
            PatternKind::Monochromatic => colors.iter().all(|c| *c == colors[0]),
            PatternKind::Rainbow => {
                let mut sorted = colors.clone();
                sorted.sort_unstable();
                sorted.windows(2).all(|w| w[0] != w[1])
            }
        };
        report.trials_run = trial + 1;
        if violated {
            report.witness = Some(Witness {
                trial,
                points: placed,
                colors,
            });
            debug_assert!(report.reverify(target, Tolerance::default()));
            break;
        }
    }
    Ok(report)
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub(crate) fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(seed ^ splitmix64(trial)))
}

fn gaussian(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Uniform random rotation (more precisely, Haar-distributed orthogonal
/// map) as orthonormalized rows of a Gaussian matrix.
pub(crate) fn haar_rotation(dim: usize, rng: &mut impl Rng) -> Vec<Vec<f64>> {
    loop {
        let rows: Vec<Vec<f64>> = (0..dim)
            .map(|_| (0..dim).map(|_| gaussian(rng)).collect())
            .collect();
        let basis = linalg::orthonormal_basis(&rows, 1e-9);
        if basis.len() == dim {
            return basis;
        }
    }
}
