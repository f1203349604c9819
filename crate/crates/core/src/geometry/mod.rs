//! Core computational geometry over finite point configurations.
//!
//! The two arithmetic regimes are deliberate: general geometry runs on
//! `f64` with a [`Tolerance`] for all length comparisons, while the scaled
//! hypercube points ([`ExactHammingPoint`]) carry exact integer distance
//! data so the exhaustive case checks in `finite_verify` are proof-grade.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg;

mod congruence;
mod enclosing;
mod hamming;
pub mod shapes;
mod width;

pub use congruence::{congruent_copies, DistanceProfile, Match};
pub(crate) use congruence::{congruent_copies_filtered, SearchControl};
pub use enclosing::{circumradius, enclosing_ball, Ball};
pub use hamming::{hamming_configuration, q5_full, q5_layer3, ExactHammingPoint};
pub use width::{
    box_width, box_width_with, projection_diameter, ProjectionBound, WidthEstimate,
    DEFAULT_RESTARTS,
};

#[derive(Error, Debug)]
pub enum GeometryError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("a point must have at least one coordinate")]
    ZeroDimensional,
    #[error("coordinate {index} is not finite ({value})")]
    NonFiniteCoordinate { index: usize, value: f64 },
    #[error("a configuration must contain at least one point")]
    EmptyConfiguration,
    #[error("points {0} and {1} coincide within tolerance (use a degenerate configuration to allow this)")]
    CoincidentPoints(usize, usize),
    #[error("operation needs at least {need} points, configuration has {got}")]
    TooFewPoints { need: usize, got: usize },
    #[error("invalid position string {0:?}: expected distinct digits 1-5")]
    InvalidPositions(String),
    #[error("subspace dimension {subspace} out of range for ambient dimension {ambient}")]
    BadSubspaceDimension { subspace: usize, ambient: usize },
    #[error("declared dim {declared} does not match point of dim {actual}")]
    DimFieldMismatch { declared: usize, actual: usize },
}

/// Absolute/relative tolerance for comparing lengths.
///
/// Two lengths `d1`, `d2` match iff `|d1 - d2| <= abs_eps + rel_eps * max(|d1|, |d2|)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs_eps: f64,
    pub rel_eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs_eps: 1e-9,
            rel_eps: 1e-12,
        }
    }
}

impl Tolerance {
    pub const fn new(abs_eps: f64, rel_eps: f64) -> Self {
        Tolerance { abs_eps, rel_eps }
    }

    pub fn matches(&self, d1: f64, d2: f64) -> bool {
        (d1 - d2).abs() <= self.abs_eps + self.rel_eps * d1.abs().max(d2.abs())
    }

    /// Slack allowed around a length of magnitude `d`.
    pub fn slack(&self, d: f64) -> f64 {
        self.abs_eps + self.rel_eps * d.abs()
    }
}

/// A point of `E^n`, `n >= 1`, with finite coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self, GeometryError> {
        if coords.is_empty() {
            return Err(GeometryError::ZeroDimensional);
        }
        for (index, &value) in coords.iter().enumerate() {
            if !value.is_finite() {
                return Err(GeometryError::NonFiniteCoordinate { index, value });
            }
        }
        Ok(Point { coords })
    }

    pub fn from_slice(coords: &[f64]) -> Result<Self, GeometryError> {
        Point::new(coords.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Squared distance to the origin.
    pub fn sq_norm(&self) -> f64 {
        linalg::sq_norm(&self.coords)
    }

    /// The same point with zero coordinates appended up to `dim`.
    pub fn zero_padded(&self, dim: usize) -> Point {
        let mut coords = self.coords.clone();
        coords.resize(dim.max(coords.len()), 0.0);
        Point { coords }
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = GeometryError;
    fn try_from(coords: Vec<f64>) -> Result<Self, Self::Error> {
        Point::new(coords)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Vec<f64> {
        p.coords
    }
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Serialize, Deserialize)]
struct ConfigurationRepr {
    dim: usize,
    points: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    #[serde(default, skip_serializing_if = "is_false")]
    degenerate: bool,
}

/// A finite, non-empty, labeled point set with all points in one dimension.
///
/// Constructors reject coincident points (within the default [`Tolerance`])
/// unless the configuration is explicitly built as degenerate.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "ConfigurationRepr", into = "ConfigurationRepr")]
pub struct Configuration {
    points: Vec<Point>,
    label: Option<String>,
    degenerate: bool,
}

impl Configuration {
    pub fn new(points: Vec<Point>) -> Result<Self, GeometryError> {
        Self::build(points, None, false)
    }

    /// Allows coincident points.
    pub fn new_degenerate(points: Vec<Point>) -> Result<Self, GeometryError> {
        Self::build(points, None, true)
    }

    pub fn from_rows(rows: &[&[f64]]) -> Result<Self, GeometryError> {
        let points = rows
            .iter()
            .map(|r| Point::from_slice(r))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(points)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    fn build(points: Vec<Point>, label: Option<String>, degenerate: bool) -> Result<Self, GeometryError> {
        if points.is_empty() {
            return Err(GeometryError::EmptyConfiguration);
        }
        let dim = points[0].dim();
        for p in &points[1..] {
            if p.dim() != dim {
                return Err(GeometryError::DimensionMismatch(dim, p.dim()));
            }
        }
        if !degenerate {
            let tol = Tolerance::default();
            for i in 0..points.len() {
                for j in i + 1..points.len() {
                    let d = linalg::norm(&linalg::sub(points[i].coords(), points[j].coords()));
                    if tol.matches(d, 0.0) {
                        return Err(GeometryError::CoincidentPoints(i, j));
                    }
                }
            }
        }
        Ok(Configuration {
            points,
            label,
            degenerate,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn coords(&self, i: usize) -> &[f64] {
        self.points[i].coords()
    }

    /// Arithmetic mean of the points.
    pub fn centroid(&self) -> Point {
        let mut c = vec![0.0; self.dim()];
        for p in &self.points {
            linalg::axpy(&mut c, 1.0, p.coords());
        }
        let n = self.points.len() as f64;
        Point {
            coords: c.into_iter().map(|x| x / n).collect(),
        }
    }

    /// The configuration of the points at `indices`, preserving order.
    pub fn subset(&self, indices: &[usize]) -> Configuration {
        Configuration {
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
            label: None,
            degenerate: self.degenerate,
        }
    }

    /// Same points embedded in a higher dimension by appending zeros.
    pub fn zero_padded(&self, dim: usize) -> Configuration {
        Configuration {
            points: self.points.iter().map(|p| p.zero_padded(dim)).collect(),
            label: self.label.clone(),
            degenerate: self.degenerate,
        }
    }
}

impl TryFrom<ConfigurationRepr> for Configuration {
    type Error = GeometryError;
    fn try_from(repr: ConfigurationRepr) -> Result<Self, Self::Error> {
        let points = repr
            .points
            .into_iter()
            .map(Point::new)
            .collect::<Result<Vec<_>, _>>()?;
        for p in &points {
            if p.dim() != repr.dim {
                return Err(GeometryError::DimFieldMismatch {
                    declared: repr.dim,
                    actual: p.dim(),
                });
            }
        }
        Configuration::build(points, repr.label, repr.degenerate)
    }
}

impl From<Configuration> for ConfigurationRepr {
    fn from(c: Configuration) -> ConfigurationRepr {
        ConfigurationRepr {
            dim: c.dim(),
            points: c.points.iter().map(|p| p.coords.clone()).collect(),
            label: c.label,
            degenerate: c.degenerate,
        }
    }
}

/// Euclidean distance between two points of equal dimension.
pub fn distance(p: &Point, q: &Point) -> Result<f64, GeometryError> {
    if p.dim() != q.dim() {
        return Err(GeometryError::DimensionMismatch(p.dim(), q.dim()));
    }
    Ok(linalg::norm(&linalg::sub(p.coords(), q.coords())))
}

pub(crate) fn dist_unchecked(a: &[f64], b: &[f64]) -> f64 {
    linalg::norm(&linalg::sub(a, b))
}

/// Largest pairwise distance; `0` for a singleton.
pub fn diameter(c: &Configuration) -> f64 {
    let pts = c.points();
    let mut best = 0.0f64;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            best = best.max(dist_unchecked(pts[i].coords(), pts[j].coords()));
        }
    }
    best
}

/// Number of dimensions actually spanned: the numerical rank of the
/// centered point matrix, with singular values at most
/// `abs_eps + rel_eps * sigma_max` treated as zero.
pub fn affine_dimension(c: &Configuration, tol: Tolerance) -> usize {
    let centroid = c.centroid();
    let rows: Vec<Vec<f64>> = c
        .points()
        .iter()
        .map(|p| linalg::sub(p.coords(), centroid.coords()))
        .collect();
    let k = rows.len();
    let n = c.dim();
    // Work with the smaller Gram matrix; its eigenvalues are the squared
    // singular values of the centered matrix.
    let m = k.min(n);
    let mut gram = vec![vec![0.0; m]; m];
    if k <= n {
        for i in 0..k {
            for j in i..k {
                let g = linalg::dot(&rows[i], &rows[j]);
                gram[i][j] = g;
                gram[j][i] = g;
            }
        }
    } else {
        for a in 0..n {
            for b in a..n {
                let mut g = 0.0;
                for row in &rows {
                    g += row[a] * row[b];
                }
                gram[a][b] = g;
                gram[b][a] = g;
            }
        }
    }
    let eigen = linalg::symmetric_eigenvalues(gram);
    let singular: Vec<f64> = eigen.iter().map(|&l| l.max(0.0).sqrt()).collect();
    let sigma_max = singular.iter().fold(0.0f64, |m, &s| m.max(s));
    // Eigenvalues of the Gram matrix carry noise of order eps * lambda_max,
    // which surfaces as sqrt(eps) * sigma_max after the square root; the cut
    // must sit above that floor.
    let noise_floor = 64.0 * f64::EPSILON.sqrt() * sigma_max;
    let cut = (tol.abs_eps + tol.rel_eps * sigma_max).max(noise_floor);
    singular.iter().filter(|&&s| s > cut).count()
}

/// Witness sphere through all points of `c`, if one exists.
///
/// Solves for a center equidistant from every point within the affine hull
/// of the configuration, then verifies all distances agree within `tol`.
pub fn is_spherical(c: &Configuration, tol: Tolerance) -> Option<(Point, f64)> {
    let pts = c.points();
    let p0 = pts[0].coords();
    if pts.len() == 1 {
        return Some((pts[0].clone(), 0.0));
    }
    let diffs: Vec<Vec<f64>> = pts[1..]
        .iter()
        .map(|p| linalg::sub(p.coords(), p0))
        .collect();
    let basis = linalg::orthonormal_basis(&diffs, tol.abs_eps);
    let d = basis.len();
    // Equidistance from p0 and p_i reads 2 (p_i - p0) . (center - p0) = |p_i - p0|^2.
    // Solve in hull coordinates by normal equations, then verify.
    let mut ata = vec![vec![0.0; d]; d];
    let mut atb = vec![0.0; d];
    for v in &diffs {
        let a_row: Vec<f64> = basis.iter().map(|b| 2.0 * linalg::dot(v, b)).collect();
        let rhs = linalg::sq_norm(v);
        for i in 0..d {
            for j in 0..d {
                ata[i][j] += a_row[i] * a_row[j];
            }
            atb[i] += a_row[i] * rhs;
        }
    }
    let y = linalg::solve(ata, atb, 1e-13)?;
    let mut center = p0.to_vec();
    for (yi, b) in y.iter().zip(&basis) {
        linalg::axpy(&mut center, *yi, b);
    }
    let radii: Vec<f64> = pts.iter().map(|p| dist_unchecked(&center, p.coords())).collect();
    let radius = radii.iter().sum::<f64>() / radii.len() as f64;
    if radii.iter().all(|&r| tol.matches(r, radius)) {
        Some((Point { coords: center }, radius))
    } else {
        None
    }
}

/// Heights of an ordered point sequence: for each point from the third on,
/// its distance to the affine span of all earlier points. A point that is
/// affinely dependent on its predecessors reports height `0`.
pub fn simplex_heights(c: &Configuration) -> Result<Vec<f64>, GeometryError> {
    let pts = c.points();
    if pts.len() < 3 {
        return Err(GeometryError::TooFewPoints {
            need: 3,
            got: pts.len(),
        });
    }
    let tol = Tolerance::default();
    let p0 = pts[0].coords();
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let first = linalg::sub(pts[1].coords(), p0);
    if let Some(b) = linalg::normalized(&first) {
        basis.push(b);
    }
    let mut heights = Vec::with_capacity(pts.len() - 2);
    for p in &pts[2..] {
        let mut r = linalg::sub(p.coords(), p0);
        for _ in 0..2 {
            for b in &basis {
                let ccoef = linalg::dot(&r, b);
                linalg::axpy(&mut r, -ccoef, b);
            }
        }
        let h = linalg::norm(&r);
        if h > tol.abs_eps {
            heights.push(h);
            basis.push(linalg::scale(&r, 1.0 / h));
        } else {
            heights.push(0.0);
        }
    }
    Ok(heights)
}
