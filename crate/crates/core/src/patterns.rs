//! Monochromatic / rainbow pattern detection over explicitly colored finite
//! point sets.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::colorings::{ColorId, ColoringRule};
use crate::geometry::{
    congruent_copies_filtered, Configuration, GeometryError, Match, SearchControl, Tolerance,
};

#[derive(Error, Debug)]
pub enum PatternError {
    #[error("{points} points but {colors} colors")]
    LengthMismatch { points: usize, colors: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Serialize, Deserialize)]
struct ColoredPointSetRepr {
    points: Vec<Vec<f64>>,
    colors: Vec<ColorId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

/// A finite point set with one color per point.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "ColoredPointSetRepr", into = "ColoredPointSetRepr")]
pub struct ColoredPointSet {
    points: Configuration,
    colors: Vec<ColorId>,
}

impl ColoredPointSet {
    pub fn new(points: Configuration, colors: Vec<ColorId>) -> Result<Self, PatternError> {
        if points.len() != colors.len() {
            return Err(PatternError::LengthMismatch {
                points: points.len(),
                colors: colors.len(),
            });
        }
        Ok(ColoredPointSet { points, colors })
    }

    /// Colors a finite configuration by a closed-form rule.
    pub fn from_rule(points: Configuration, rule: &ColoringRule) -> Self {
        let colors = points.points().iter().map(|p| rule.color(p)).collect();
        ColoredPointSet { points, colors }
    }

    pub fn points(&self) -> &Configuration {
        &self.points
    }

    pub fn colors(&self) -> &[ColorId] {
        &self.colors
    }

    pub fn color(&self, i: usize) -> ColorId {
        self.colors[i]
    }

    pub fn distinct_colors(&self) -> usize {
        let mut cs = self.colors.clone();
        cs.sort_unstable();
        cs.dedup();
        cs.len()
    }
}

impl TryFrom<ColoredPointSetRepr> for ColoredPointSet {
    type Error = PatternError;
    fn try_from(repr: ColoredPointSetRepr) -> Result<Self, Self::Error> {
        let rows: Vec<&[f64]> = repr.points.iter().map(|r| r.as_slice()).collect();
        let mut cfg = Configuration::from_rows(&rows)?;
        if let Some(label) = repr.label {
            cfg = cfg.with_label(label);
        }
        ColoredPointSet::new(cfg, repr.colors)
    }
}

impl From<ColoredPointSet> for ColoredPointSetRepr {
    fn from(s: ColoredPointSet) -> ColoredPointSetRepr {
        ColoredPointSetRepr {
            points: s
                .points
                .points()
                .iter()
                .map(|p| p.coords().to_vec())
                .collect(),
            colors: s.colors,
            label: s.points.label().map(String::from),
        }
    }
}

/// All congruent copies of `target` whose points share one color.
///
/// The search runs once per color class with at least `|target|` points, so
/// geometric matching never crosses classes.
pub fn find_mono(s: &ColoredPointSet, target: &Configuration, tol: Tolerance) -> Vec<Match> {
    find_mono_inner(s, target, tol, SearchControl::All)
}

/// All congruent copies of `target` with pairwise distinct colors.
pub fn find_rainbow(s: &ColoredPointSet, target: &Configuration, tol: Tolerance) -> Vec<Match> {
    find_rainbow_inner(s, target, tol, SearchControl::All)
}

fn find_mono_inner(
    s: &ColoredPointSet,
    target: &Configuration,
    tol: Tolerance,
    control: SearchControl,
) -> Vec<Match> {
    let k = target.len();
    let mut classes: Vec<ColorId> = s.colors.to_vec();
    classes.sort_unstable();
    classes.dedup();

    let mut all = Vec::new();
    for class in classes {
        let members: Vec<usize> = (0..s.points.len())
            .filter(|&i| s.colors[i] == class)
            .collect();
        if members.len() < k {
            continue;
        }
        let sub = s.points.subset(&members);
        let found = congruent_copies_filtered(&sub, target, tol, |_| true, control);
        for m in found {
            let indices: Vec<usize> = m.indices().iter().map(|&i| members[i]).collect();
            all.push(Match::from_indices(indices));
            if control == SearchControl::FirstOnly {
                return all;
            }
        }
    }
    all.sort_by_key(|m| m.point_set());
    all
}

fn find_rainbow_inner(
    s: &ColoredPointSet,
    target: &Configuration,
    tol: Tolerance,
    control: SearchControl,
) -> Vec<Match> {
    let k = target.len();
    if s.distinct_colors() < k {
        return Vec::new();
    }
    let colors = s.colors.clone();
    congruent_copies_filtered(
        &s.points,
        target,
        tol,
        |chosen| {
            let last = colors[*chosen.last().unwrap()];
            chosen[..chosen.len() - 1]
                .iter()
                .all(|&i| colors[i] != last)
        },
        control,
    )
}

/// Outcome of the combined check on a colored finite set.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum GallaiVerdict {
    MonoFound { witness: Match },
    RainbowFound { witness: Match },
    /// The finite set is a sampled counterexample certificate: it contains
    /// neither a monochromatic copy of the first target nor a rainbow copy
    /// of the second.
    Neither,
}

/// Short-circuits on the first witness: a monochromatic copy of `mono_target`
/// if one exists, else a rainbow copy of `rainbow_target`, else `Neither`.
pub fn gallai_check(
    s: &ColoredPointSet,
    mono_target: &Configuration,
    rainbow_target: &Configuration,
    tol: Tolerance,
) -> GallaiVerdict {
    if let Some(m) = find_mono_inner(s, mono_target, tol, SearchControl::FirstOnly)
        .into_iter()
        .next()
    {
        return GallaiVerdict::MonoFound { witness: m };
    }
    if let Some(m) = find_rainbow_inner(s, rainbow_target, tol, SearchControl::FirstOnly)
        .into_iter()
        .next()
    {
        return GallaiVerdict::RainbowFound { witness: m };
    }
    GallaiVerdict::Neither
}
