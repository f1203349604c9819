//! Deterministic SVG rendering of a two-dimensional coloring slice.
//!
//! The window is sampled at pixel centers; horizontal runs of one color
//! merge into single rectangles. Output bytes are a pure function of the
//! inputs, so renders diff cleanly.

use std::fmt::Write as _;

use anyhow::{ensure, Result};

use gallai_core::colorings::{ColoringRule, Region};
use gallai_core::geometry::Point;

pub const DEFAULT_PALETTE: [&str; 12] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
    "#9c755f", "#bab0ac", "#1170aa", "#c85200",
];

pub struct RenderOptions {
    pub pixels_per_unit: f64,
    pub palette: Vec<String>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            pixels_per_unit: 20.0,
            palette: DEFAULT_PALETTE.iter().map(|s| s.to_string()).collect(),
        }
    }
}

pub fn render_rule_svg(
    rule: &ColoringRule,
    window: &Region,
    options: &RenderOptions,
    overlays: &[Vec<[f64; 2]>],
) -> Result<String> {
    ensure!(window.dim() == 2, "render window must be two-dimensional");
    ensure!(
        options.pixels_per_unit > 0.0,
        "pixels-per-unit must be positive"
    );
    ensure!(!options.palette.is_empty(), "palette must not be empty");
    rule.check(2)?;

    let (x0, x1) = window.intervals()[0];
    let (y0, y1) = window.intervals()[1];
    let ppu = options.pixels_per_unit;
    let width = ((x1 - x0) * ppu).ceil().max(1.0) as usize;
    let height = ((y1 - y0) * ppu).ceil().max(1.0) as usize;
    ensure!(
        width * height <= 16_000_000,
        "render of {width}x{height} pixels is too large"
    );

    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )?;

    for iy in 0..height {
        let wy = y1 - (iy as f64 + 0.5) / ppu;
        let mut run_start = 0usize;
        let mut run_color: Option<u64> = None;
        for ix in 0..=width {
            let color = if ix < width {
                let wx = x0 + (ix as f64 + 0.5) / ppu;
                Some(rule.color(&Point::new(vec![wx, wy]).unwrap()).0)
            } else {
                None
            };
            if color != run_color {
                if let Some(c) = run_color {
                    let fill = &options.palette[c as usize % options.palette.len()];
                    writeln!(
                        svg,
                        r#"<rect x="{run_start}" y="{iy}" width="{}" height="1" fill="{fill}"/>"#,
                        ix - run_start
                    )?;
                }
                run_start = ix;
                run_color = color;
            }
        }
    }

    for poly in overlays {
        if poly.is_empty() {
            continue;
        }
        let points: Vec<String> = poly
            .iter()
            .map(|[x, y]| format!("{:.3},{:.3}", (x - x0) * ppu, (y1 - y) * ppu))
            .collect();
        writeln!(
            svg,
            r##"<polygon points="{}" fill="none" stroke="#000000" stroke-width="1.5"/>"##,
            points.join(" ")
        )?;
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}
