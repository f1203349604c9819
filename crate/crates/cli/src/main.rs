//! Command-line front end over the verification toolkit.
//!
//! Exit codes: 0 for a clean / expected outcome, 1 when a witness was found
//! where none was expected (a coloring violation, a satisfiable instance
//! that should be unsatisfiable, a failed exhaustive check), 2 for usage or
//! input errors.

mod inputs;
mod render;
mod report;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use gallai_core::colorings::{recommended_block_colors, verify_no_mono, verify_no_rainbow, Region};
use gallai_core::finite_verify::{
    build_triple_csp, builtin_proof_offsets, solve_triple_csp, verify_q5_lemma,
    verify_q5_lemma_full, CspOutcome,
};
use gallai_core::geometry::{
    affine_dimension, box_width_with, diameter, enclosing_ball, is_spherical, projection_diameter,
    simplex_heights, Tolerance, DEFAULT_RESTARTS,
};
use gallai_core::patterns::{find_mono, find_rainbow, gallai_check, GallaiVerdict};
use gallai_core::propagate::{build_instance, forcing_report, propagate_rounds};

use report::Report;

#[derive(Parser)]
#[command(name = "gallai", version, about = "Euclidean Gallai-Ramsey search and verification toolkit", max_term_width = 100)]
struct Cli {
    /// Absolute tolerance for length comparisons.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol_abs: f64,
    /// Relative tolerance for length comparisons.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol_rel: f64,
    /// Output path: SVG target for `render`, report copy otherwise.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scalar invariants of a configuration: diameter, box-width,
    /// circumradius, affine dimension, sphericality, heights.
    Invariants {
        /// Configuration JSON ({"dim", "points", ...} or {"hamming": [...]}).
        #[arg(long)]
        input: PathBuf,
        /// Restarts for the width / projection optimizers.
        #[arg(long, default_value_t = DEFAULT_RESTARTS)]
        restarts: u32,
        /// RNG seed for the optimizers.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also bound the minimal projection diameter onto this dimension.
        #[arg(long)]
        projection_dim: Option<usize>,
    },
    /// Render a two-dimensional slice of a coloring rule to SVG.
    Render {
        /// Coloring rule JSON.
        #[arg(long)]
        rule: PathBuf,
        /// Window as "x0,x1;y0,y1".
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value_t = 20.0)]
        pixels_per_unit: f64,
        /// Optional overlay polygons (or a report with a witness).
        #[arg(long)]
        overlay: Option<PathBuf>,
        /// Comma-separated hex fills overriding the default palette.
        #[arg(long)]
        palette: Option<String>,
    },
    /// Exhaustive finite verifications.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
    /// Sample random congruent placements of a pattern under a rule and
    /// hunt for monochromatic or rainbow copies.
    CheckColoring {
        #[arg(long)]
        rule: PathBuf,
        /// Target configuration JSON.
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sampling box as "x0,x1;y0,y1;...".
        #[arg(long, allow_hyphen_values = true)]
        region: String,
    },
    /// Search an explicitly colored point set for monochromatic or rainbow
    /// copies of a target.
    Find {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Target configuration JSON.
        #[arg(long)]
        target: PathBuf,
        /// Colored point set JSON ({"points": [...], "colors": [...]}).
        #[arg(long)]
        input: PathBuf,
        /// With both targets given, report the first witness of either kind:
        /// `--target` is searched monochromatically, this one rainbow.
        #[arg(long)]
        rainbow_target: Option<PathBuf>,
    },
    /// Shrink per-point allowed-color sets under a no-rainbow hypothesis.
    Propagate {
        /// Point set JSON.
        #[arg(long)]
        points: PathBuf,
        /// Forbidden-rainbow configuration JSON.
        #[arg(long)]
        k2: PathBuf,
        /// Total number of colors (at most 64).
        #[arg(long)]
        colors: u64,
        /// Seed assignments as idx:color, repeatable.
        #[arg(long = "seed", value_name = "IDX:COLOR")]
        seed: Vec<String>,
        #[arg(long, default_value_t = u32::MAX)]
        max_rounds: u32,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Check every partition of the ten three-entry scaled-cube points for
    /// a monochromatic unit pair or rainbow unit square.
    Q5 {
        /// Scan the full 32-point cube with branch pruning instead.
        #[arg(long)]
        full_q5: bool,
    },
    /// Solve the no-mono / no-rainbow constraint system over a rational
    /// offset ground set; the built-in 22-point set is unsatisfiable.
    Triples {
        /// Offsets JSON: integers or "p/q" strings.
        #[arg(long, conflicts_with = "builtin_proof_set")]
        offsets: Option<PathBuf>,
        #[arg(long)]
        builtin_proof_set: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Mono,
    Rainbow,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let tol = Tolerance::new(cli.tol_abs, cli.tol_rel);
    let started = Instant::now();
    let (command, config, result, exit) = dispatch(&cli, tol)?;
    let elapsed_ms = started.elapsed().as_millis() as u64;
    let report = Report::new(&command, config, elapsed_ms, result);
    let rendered = serde_json::to_string_pretty(&report)?;
    println!("{rendered}");
    if let Some(out) = &cli.out {
        if !matches!(cli.command, Command::Render { .. }) {
            fs::write(out, rendered.as_bytes())
                .with_context(|| format!("writing {}", out.display()))?;
        }
    }
    Ok(exit)
}

type Dispatch = (String, serde_json::Value, serde_json::Value, ExitCode);

fn dispatch(cli: &Cli, tol: Tolerance) -> Result<Dispatch> {
    match &cli.command {
        Command::Invariants {
            input,
            restarts,
            seed,
            projection_dim,
        } => {
            let c = inputs::load_configuration(input)?;
            let width = box_width_with(&c, *restarts, *seed);
            let ball = enclosing_ball(&c);
            let spherical = is_spherical(&c, tol);
            let heights = if c.len() >= 3 {
                Some(simplex_heights(&c)?)
            } else {
                None
            };
            let projection = match projection_dim {
                Some(m) => Some(projection_diameter(&c, *m, *restarts, *seed)?),
                None => None,
            };
            let config = json!({
                "input": input.display().to_string(),
                "restarts": restarts,
                "seed": seed,
                "tol_abs": tol.abs_eps,
                "tol_rel": tol.rel_eps,
                "projection_dim": projection_dim,
            });
            let diam = diameter(&c);
            // Color count the block construction needs to exclude this
            // configuration: ceil(diameter / box-width) + 1.
            let block_colors = if width.value > tol.abs_eps {
                Some(recommended_block_colors(diam, width.value))
            } else {
                None
            };
            let result = json!({
                "label": c.label(),
                "points": c.len(),
                "dim": c.dim(),
                "diameter": diam,
                "box_width": width,
                "recommended_block_colors": block_colors,
                "circumradius": ball.radius,
                "enclosing_center": ball.center.coords(),
                "affine_dimension": affine_dimension(&c, tol),
                "spherical": spherical.map(|(center, radius)| json!({
                    "center": center.coords(),
                    "radius": radius,
                })),
                "heights": heights,
                "projection_diameter": projection,
            });
            Ok(("invariants".into(), config, result, ExitCode::SUCCESS))
        }

        Command::Render {
            rule,
            window,
            pixels_per_unit,
            overlay,
            palette,
        } => {
            let out = cli
                .out
                .as_ref()
                .context("render needs --out for the SVG file")?;
            let rule_value = inputs::load_rule(rule)?;
            let region = Region::parse(window)?;
            let overlays = match overlay {
                Some(path) => inputs::load_overlays(path)?,
                None => Vec::new(),
            };
            let mut options = render::RenderOptions {
                pixels_per_unit: *pixels_per_unit,
                ..Default::default()
            };
            if let Some(p) = palette {
                options.palette = p.split(',').map(|s| s.trim().to_string()).collect();
            }
            let svg = render::render_rule_svg(&rule_value, &region, &options, &overlays)?;
            fs::write(out, svg.as_bytes()).with_context(|| format!("writing {}", out.display()))?;
            let config = json!({
                "rule": rule_value,
                "window": window,
                "pixels_per_unit": pixels_per_unit,
                "overlay": overlay.as_ref().map(|p| p.display().to_string()),
                "palette": options.palette,
                "out": out.display().to_string(),
            });
            let result = json!({
                "svg_path": out.display().to_string(),
                "svg_bytes": svg.len(),
                "overlay_polygons": overlays.len(),
            });
            Ok(("render".into(), config, result, ExitCode::SUCCESS))
        }

        Command::Verify { what } => match what {
            VerifyCommand::Q5 { full_q5 } => {
                let report = if *full_q5 {
                    verify_q5_lemma_full()
                } else {
                    verify_q5_lemma()
                };
                let clean = report.counterexamples.is_empty();
                let config = json!({ "full_q5": full_q5 });
                let result = json!({
                    "checked": report.partitions_checked,
                    "case1": report.case1_hits,
                    "case2": report.case2_hits,
                    "counterexamples": report.counterexamples,
                    "elapsed_ms": report.elapsed_ms,
                    "full_cube": report.full_cube,
                });
                let exit = if clean { ExitCode::SUCCESS } else { ExitCode::from(1) };
                Ok(("verify q5".into(), config, result, exit))
            }
            VerifyCommand::Triples {
                offsets,
                builtin_proof_set,
            } => {
                let offset_values = match (offsets, builtin_proof_set) {
                    (Some(path), false) => inputs::load_offsets(path)?,
                    (None, true) => builtin_proof_offsets(),
                    (None, false) => {
                        bail!("verify triples needs --offsets FILE or --builtin-proof-set")
                    }
                    (Some(_), true) => unreachable!("clap conflicts_with"),
                };
                let csp = build_triple_csp(&offset_values);
                let outcome = solve_triple_csp(&csp);
                let config = json!({
                    "builtin_proof_set": builtin_proof_set,
                    "offsets": csp.offsets().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                });
                let (status, witness, exit) = match &outcome {
                    CspOutcome::Unsat { .. } => ("unsat", None, ExitCode::SUCCESS),
                    CspOutcome::Sat { witness, .. } => {
                        ("sat", Some(witness.clone()), ExitCode::from(1))
                    }
                };
                let result = json!({
                    "status": status,
                    "witness": witness,
                    "nodes": outcome.nodes(),
                    "constraints": csp.constraints().len(),
                    "sufficient_N": csp.sufficient_base().to_string(),
                });
                Ok(("verify triples".into(), config, result, exit))
            }
        },

        Command::CheckColoring {
            rule,
            pattern,
            mode,
            trials,
            seed,
            region,
        } => {
            let rule_value = inputs::load_rule(rule)?;
            let target = inputs::load_configuration(pattern)?;
            let region_value = Region::parse(region)?;
            let report = match mode {
                Mode::Mono => verify_no_mono(&rule_value, &target, &region_value, *trials, *seed)?,
                Mode::Rainbow => {
                    verify_no_rainbow(&rule_value, &target, &region_value, *trials, *seed)?
                }
            };
            if !report.reverify(&target, tol) {
                bail!("internal error: witness failed its independent recheck");
            }
            let clean = report.is_clean();
            let config = json!({
                "rule": rule_value,
                "pattern": pattern.display().to_string(),
                "mode": match mode { Mode::Mono => "mono", Mode::Rainbow => "rainbow" },
                "trials": trials,
                "seed": seed,
                "region": region,
                "tol_abs": tol.abs_eps,
                "tol_rel": tol.rel_eps,
            });
            let result = serde_json::to_value(&report)?;
            let exit = if clean { ExitCode::SUCCESS } else { ExitCode::from(1) };
            Ok(("check-coloring".into(), config, result, exit))
        }

        Command::Find {
            mode,
            target,
            input,
            rainbow_target,
        } => {
            let target_value = inputs::load_configuration(target)?;
            let set = inputs::load_colored_set(input)?;
            let config = json!({
                "mode": match mode { Mode::Mono => "mono", Mode::Rainbow => "rainbow" },
                "target": target.display().to_string(),
                "input": input.display().to_string(),
                "rainbow_target": rainbow_target.as_ref().map(|p| p.display().to_string()),
            });
            let result = match rainbow_target {
                Some(path) => {
                    let rainbow_value = inputs::load_configuration(path)?;
                    let verdict = gallai_check(&set, &target_value, &rainbow_value, tol);
                    let describe = |m: &gallai_core::Match| {
                        json!({ "indices": m.indices(), "point_set": m.point_set() })
                    };
                    match verdict {
                        GallaiVerdict::MonoFound { witness } => json!({
                            "verdict": "mono_found", "witness": describe(&witness),
                        }),
                        GallaiVerdict::RainbowFound { witness } => json!({
                            "verdict": "rainbow_found", "witness": describe(&witness),
                        }),
                        GallaiVerdict::Neither => json!({ "verdict": "neither" }),
                    }
                }
                None => {
                    let matches = match mode {
                        Mode::Mono => find_mono(&set, &target_value, tol),
                        Mode::Rainbow => find_rainbow(&set, &target_value, tol),
                    };
                    json!({
                        "matches": matches.iter().map(|m| json!({
                            "indices": m.indices(),
                            "point_set": m.point_set(),
                            "colors": m.point_set().iter().map(|&i| set.color(i)).collect::<Vec<_>>(),
                        })).collect::<Vec<_>>(),
                        "count": matches.len(),
                    })
                }
            };
            Ok(("find".into(), config, result, ExitCode::SUCCESS))
        }

        Command::Propagate {
            points,
            k2,
            colors,
            seed,
            max_rounds,
        } => {
            let point_set = inputs::load_configuration(points)?;
            let forbidden = inputs::load_configuration(k2)?;
            let seeds = inputs::parse_seed_assignments(seed)?;
            let instance = build_instance(point_set, &forbidden, *colors, &seeds, tol)?;
            let result_value = propagate_rounds(&instance, *max_rounds);
            let summary = forcing_report(&instance, &result_value);
            let config = json!({
                "points": points.display().to_string(),
                "k2": k2.display().to_string(),
                "colors": colors,
                "seeds": seeds,
                "max_rounds": max_rounds,
                "tol_abs": tol.abs_eps,
                "tol_rel": tol.rel_eps,
            });
            let allowed: Vec<Vec<u64>> = (0..result_value.map.len())
                .map(|i| result_value.map.allowed_colors(i))
                .collect();
            let result = json!({
                "constraints": instance.constraints().len(),
                "allowed": allowed,
                "masks": result_value.map.masks(),
                "rounds": result_value.rounds,
                "fixpoint": result_value.fixpoint,
                "contradiction": result_value.contradiction,
                "summary": summary,
            });
            Ok(("propagate".into(), config, result, ExitCode::SUCCESS))
        }
    }
}
