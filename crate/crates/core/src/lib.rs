//! Search and verification toolkit for Euclidean Gallai-Ramsey colorings.
//!
//! Everything revolves around finite labeled point sets in `E^n`
//! ([`Configuration`]) and colorings of them:
//!
//! - [`geometry`] — metrics, congruent-copy search and the scalar invariants
//!   (diameter, box-width, circumradius, affine dimension, simplex heights)
//!   that coloring constructions are parameterized by.
//! - [`colorings`] — closed-form coloring rules of `E^n` (block stripes,
//!   grid blocks, spherical floor-mod) plus randomized samplers that hunt
//!   for monochromatic or rainbow congruent copies under a rule.
//! - [`patterns`] — monochromatic / rainbow copy detection over explicitly
//!   colored finite point sets.
//! - [`finite_verify`] — exhaustive, exact-arithmetic case checks: every set
//!   partition of a fixed 10-point scaled-hypercube layer contains a
//!   monochromatic unit pair or a rainbow unit square, and an exact-rational
//!   CSP showing that spherical colorings cannot avoid both monochromatic
//!   and rainbow 3-term unit progressions.
//! - [`propagate`] — an arc-consistency fixpoint engine shrinking per-point
//!   allowed-color sets under "no rainbow copy" constraints.
//!
//! All randomized operations take explicit seeds and are deterministic.

pub mod colorings;
pub mod finite_verify;
pub mod geometry;
mod linalg;
pub mod patterns;
pub mod propagate;

pub use colorings::{ColorId, ColoringError, ColoringRule, PatternKind, Region, ViolationReport};
pub use geometry::{
    affine_dimension, box_width, circumradius, congruent_copies, diameter, distance,
    enclosing_ball, is_spherical, projection_diameter, simplex_heights, Ball, Configuration,
    DistanceProfile, ExactHammingPoint, GeometryError, Match, Point, ProjectionBound, Tolerance,
    WidthEstimate,
};
pub use patterns::{find_mono, find_rainbow, gallai_check, ColoredPointSet, GallaiVerdict};
