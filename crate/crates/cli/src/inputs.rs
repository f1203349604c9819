//! Input file loading: configurations (plain or as position strings of the
//! scaled 5-cube), coloring rules, colored point sets, rational offsets and
//! render overlays.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use num_rational::Rational64;
use serde::Deserialize;

use gallai_core::colorings::ColoringRule;
use gallai_core::geometry::{hamming_configuration, Configuration, ExactHammingPoint};
use gallai_core::patterns::ColoredPointSet;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

#[derive(Deserialize)]
struct HammingFile {
    hamming: Vec<ExactHammingPoint>,
    #[serde(default)]
    label: Option<String>,
}

/// Loads a configuration: either the standard `{"dim", "points", ...}`
/// shape or `{"hamming": ["123", ...]}` position strings, which embed into
/// five dimensions with entries 0 and 1/sqrt(2).
pub fn load_configuration(path: &Path) -> Result<Configuration> {
    let text = read(path)?;
    if let Ok(h) = serde_json::from_str::<HammingFile>(&text) {
        let mut c = hamming_configuration(&h.hamming);
        if let Some(label) = h.label {
            c = c.with_label(label);
        }
        return Ok(c);
    }
    serde_json::from_str::<Configuration>(&text)
        .with_context(|| format!("parsing configuration {}", path.display()))
}

pub fn load_rule(path: &Path) -> Result<ColoringRule> {
    let text = read(path)?;
    serde_json::from_str::<ColoringRule>(&text)
        .with_context(|| format!("parsing coloring rule {}", path.display()))
}

pub fn load_colored_set(path: &Path) -> Result<ColoredPointSet> {
    let text = read(path)?;
    serde_json::from_str::<ColoredPointSet>(&text)
        .with_context(|| format!("parsing colored point set {}", path.display()))
}

/// Offsets file: a JSON array whose entries are integers or strings in
/// `numerator/denominator` form, e.g. `[0, "1/3", "1/2", 4]`.
pub fn load_offsets(path: &Path) -> Result<Vec<Rational64>> {
    let text = read(path)?;
    let raw: Vec<serde_json::Value> = serde_json::from_str(&text)
        .with_context(|| format!("parsing offsets {}", path.display()))?;
    let mut offsets = Vec::with_capacity(raw.len());
    for v in raw {
        let r = match &v {
            serde_json::Value::Number(n) => {
                let i = n
                    .as_i64()
                    .with_context(|| format!("offset {n} is not an integer; use \"p/q\""))?;
                Rational64::from(i)
            }
            serde_json::Value::String(s) => s
                .parse::<Rational64>()
                .with_context(|| format!("cannot parse offset {s:?}"))?,
            other => bail!("offset entries must be integers or strings, got {other}"),
        };
        offsets.push(r);
    }
    Ok(offsets)
}

/// Overlay polygons for rendering: `{"polygons": [[[x, y], ...], ...]}`, or
/// any report containing a sampling witness (its points are used).
pub fn load_overlays(path: &Path) -> Result<Vec<Vec<[f64; 2]>>> {
    let text = read(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .with_context(|| format!("parsing overlay {}", path.display()))?;
    if let Some(polys) = value.get("polygons") {
        let parsed: Vec<Vec<[f64; 2]>> =
            serde_json::from_value(polys.clone()).context("parsing \"polygons\"")?;
        return Ok(parsed);
    }
    // Accept a report (or bare violation report) with witness points.
    let witness = value
        .pointer("/witness/points")
        .or_else(|| value.pointer("/result/witness/points"))
        .with_context(|| format!("{} holds neither \"polygons\" nor a witness", path.display()))?;
    let pts: Vec<Vec<f64>> = serde_json::from_value(witness.clone())?;
    let poly: Vec<[f64; 2]> = pts
        .iter()
        .map(|p| {
            if p.len() < 2 {
                bail!("witness points must be at least two-dimensional")
            } else {
                Ok([p[0], p[1]])
            }
        })
        .collect::<Result<_>>()?;
    Ok(vec![poly])
}

pub fn parse_seed_assignments(specs: &[String]) -> Result<Vec<(usize, u64)>> {
    specs
        .iter()
        .map(|s| {
            let (idx, color) = s
                .split_once(':')
                .with_context(|| format!("seed {s:?} is not in idx:color form"))?;
            Ok((
                idx.trim().parse::<usize>().context("seed index")?,
                color.trim().parse::<u64>().context("seed color")?,
            ))
        })
        .collect()
}
