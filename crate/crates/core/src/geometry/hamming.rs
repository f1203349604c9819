//! Exact arithmetic for the scaled 5-cube `(1/sqrt(2)){0,1}^5`.
//!
//! A point is stored as the subset of `{1..5}` where its coordinates are
//! non-zero. Twice the squared Euclidean distance between two such points
//! equals the size of the symmetric difference of their subsets, an exact
//! integer, so unit pairs and unit squares can be enumerated with no
//! floating point at all.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Configuration, GeometryError, Point};

/// A vertex of the scaled 5-cube, as the set of its non-zero positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactHammingPoint {
    mask: u8,
}

impl ExactHammingPoint {
    /// Bit `i` of `mask` set means position `i + 1` holds `1/sqrt(2)`.
    pub fn new(mask: u8) -> Result<Self, GeometryError> {
        if mask >= 32 {
            return Err(GeometryError::InvalidPositions(format!("mask {mask:#b}")));
        }
        Ok(ExactHammingPoint { mask })
    }

    /// Parses a position string such as `"123"`; the empty string is the
    /// all-zero vertex.
    pub fn from_positions(s: &str) -> Result<Self, GeometryError> {
        let mut mask = 0u8;
        for ch in s.chars() {
            let pos = ch
                .to_digit(10)
                .filter(|&d| (1..=5).contains(&d))
                .ok_or_else(|| GeometryError::InvalidPositions(s.to_string()))?;
            let bit = 1u8 << (pos - 1);
            if mask & bit != 0 {
                return Err(GeometryError::InvalidPositions(s.to_string()));
            }
            mask |= bit;
        }
        Ok(ExactHammingPoint { mask })
    }

    pub fn positions_string(&self) -> String {
        (1..=5)
            .filter(|p| self.mask & (1 << (p - 1)) != 0)
            .map(|p| char::from_digit(p, 10).unwrap())
            .collect()
    }

    pub fn mask(&self) -> u8 {
        self.mask
    }

    /// Number of non-zero coordinates.
    pub fn weight(&self) -> u32 {
        self.mask.count_ones()
    }

    /// Size of the symmetric difference of the position sets; this equals
    /// twice the squared Euclidean distance, exactly.
    pub fn sq_distance_times_2(&self, other: &ExactHammingPoint) -> u32 {
        (self.mask ^ other.mask).count_ones()
    }

    /// True iff the Euclidean distance is exactly 1.
    pub fn at_unit_distance(&self, other: &ExactHammingPoint) -> bool {
        self.sq_distance_times_2(other) == 2
    }

    pub fn distance(&self, other: &ExactHammingPoint) -> f64 {
        (self.sq_distance_times_2(other) as f64 / 2.0).sqrt()
    }

    /// Floating-point embedding into `E^5`.
    pub fn to_point(&self) -> Point {
        let v = 1.0 / 2f64.sqrt();
        let coords = (0..5)
            .map(|i| if self.mask & (1 << i) != 0 { v } else { 0.0 })
            .collect();
        Point::new(coords).unwrap()
    }
}

impl fmt::Display for ExactHammingPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.positions_string())
    }
}

impl Serialize for ExactHammingPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.positions_string())
    }
}

impl<'de> Deserialize<'de> for ExactHammingPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        ExactHammingPoint::from_positions(&s).map_err(D::Error::custom)
    }
}

/// All 32 vertices of the scaled 5-cube, in ascending mask order.
pub fn q5_full() -> Vec<ExactHammingPoint> {
    (0u8..32).map(|mask| ExactHammingPoint { mask }).collect()
}

/// The ten vertices with exactly three non-zero positions, ordered
/// lexicographically by position string: 123, 124, 125, 134, ..., 345.
pub fn q5_layer3() -> Vec<ExactHammingPoint> {
    let mut pts: Vec<ExactHammingPoint> = (0u8..32)
        .map(|mask| ExactHammingPoint { mask })
        .filter(|p| p.weight() == 3)
        .collect();
    pts.sort_by_key(|p| p.positions_string());
    pts
}

/// Floating-point configuration of the given vertices in `E^5`.
pub fn hamming_configuration(points: &[ExactHammingPoint]) -> Configuration {
    Configuration::new(points.iter().map(|p| p.to_point()).collect()).unwrap()
}
