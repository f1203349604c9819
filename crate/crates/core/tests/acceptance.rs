//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its measured numbers. Tolerances and thresholds are pinned in the
//! asserts themselves.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;

use gallai_core::colorings::{verify_no_mono, verify_no_rainbow, ColorId, ColoringRule, Region};
use gallai_core::finite_verify::{
    build_triple_csp, builtin_proof_offsets, solve_triple_csp, verify_q5_lemma, PotentialTriple,
};
use gallai_core::geometry::{
    box_width, circumradius, congruent_copies, diameter, distance, enclosing_ball,
    hamming_configuration, q5_full, q5_layer3, shapes, Configuration, Tolerance,
};
use gallai_core::patterns::{find_mono, find_rainbow, ColoredPointSet};
use gallai_core::propagate::{
    build_instance, instances, propagate_fixpoint, propagate_fixpoint_ordered, propagate_rounds,
};

#[test]
fn criterion_1_layer_lemma_machine_check() {
    let start = Instant::now();
    let report = verify_q5_lemma();
    let elapsed = start.elapsed();

    let bell_10 = common::bell_numbers(10)[10];
    assert_eq!(bell_10, 115_975);
    assert_eq!(report.partitions_checked as u128, bell_10);
    assert_eq!(
        report.case1_hits + report.case2_hits,
        report.partitions_checked
    );
    assert!(report.counterexamples.is_empty(), "counterexamples found");
    assert!(
        elapsed.as_secs() < 30,
        "expected under 30 s, took {elapsed:?}"
    );
    println!(
        "criterion 1 PASS: {} partitions, case1 {}, case2 {}, 0 counterexamples, {:?}",
        report.partitions_checked, report.case1_hits, report.case2_hits, elapsed
    );
}

#[test]
fn criterion_2_potential_triple_unsat() {
    let start = Instant::now();
    let offsets = builtin_proof_offsets();
    assert_eq!(offsets.len(), 22);
    let csp = build_triple_csp(&offsets);
    let outcome = solve_triple_csp(&csp);
    let elapsed = start.elapsed();
    let nodes = outcome.nodes();
    assert!(outcome.is_unsat(), "expected unsatisfiable");
    assert!(
        elapsed.as_secs() < 10,
        "expected under 10 s, took {elapsed:?}"
    );

    let n = 100i64;
    for (a, b, c) in [(n + 1, n, n + 1), (n, n, n + 2), (n + 2, n + 1, n + 2)] {
        let t = PotentialTriple::from_integers(a, b, c).unwrap();
        assert!(t.is_potential(), "({a}, {b}, {c}) must be potential");
        let realized = t.realize().unwrap();
        let norms: Vec<f64> = realized.points().iter().map(|p| p.sq_norm()).collect();
        assert!((norms[0] - a as f64).abs() < 1e-9);
        assert!((norms[1] - b as f64).abs() < 1e-9);
        assert!((norms[2] - c as f64).abs() < 1e-9);
    }
    println!(
        "criterion 2 PASS: 22-point ground set unsat ({} nodes, {:?}); opening triples realized within 1e-9",
        nodes, elapsed
    );
}

#[test]
fn criterion_3_block_coloring_property_suite() {
    let start = Instant::now();
    let x = shapes::rectangle(1.0, 3f64.sqrt());
    assert!((diameter(&x) - 2.0).abs() < 1e-12);
    let width = box_width(&x);
    assert!(width.exact && (width.value - 1.0).abs() < 1e-12);

    let rule = ColoringRule::Block { a: 1.0, num_colors: 3 };
    let region = Region::centered_cube(20.0, 2);
    let trials = 100_000;

    let mono = verify_no_mono(&rule, &x, &region, trials, 20_240_601).unwrap();
    assert!(mono.is_clean(), "monochromatic witness: {:?}", mono.witness);
    assert_eq!(mono.trials_run, trials);
    assert!(mono.reverify(&x, Tolerance::new(1e-9, 0.0)));

    let p = shapes::equilateral_triangle(1.0);
    assert!(diameter(&p) <= 1.0 + 1e-12);
    let rainbow = verify_no_rainbow(&rule, &p, &region, trials, 20_240_602).unwrap();
    assert!(rainbow.is_clean(), "rainbow witness: {:?}", rainbow.witness);
    assert_eq!(rainbow.trials_run, trials);

    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 20,
        "expected under 20 s, took {elapsed:?}"
    );
    println!(
        "criterion 3 PASS: 2x{} random placements, 0 mono rectangles, 0 rainbow triples, {:?}",
        trials, elapsed
    );
}

#[test]
fn criterion_4_spherical_mod_four_coloring() {
    let start = Instant::now();
    let rule = ColoringRule::SphericalFloorMod { m: 4 };
    let region = Region::centered_cube(50.0, 2);
    let trials = 100_000;
    let report = verify_no_mono(&rule, &shapes::ell(3), &region, trials, 20_240_603).unwrap();
    assert!(report.is_clean(), "witness: {:?}", report.witness);
    assert_eq!(report.trials_run, trials);
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 20,
        "expected under 20 s, took {elapsed:?}"
    );
    println!(
        "criterion 4 PASS: {} random 3-term placements, 0 monochromatic, {:?}",
        trials, elapsed
    );
}

#[test]
fn criterion_5_geometry_invariants() {
    let start = Instant::now();

    let q5 = hamming_configuration(&q5_full());
    let rho = circumradius(&q5);
    assert!(
        (rho - (5f64 / 8.0).sqrt()).abs() < 1e-9,
        "scaled 5-cube circumradius {rho}"
    );

    let mut rng = common::rng(5_001);
    for _ in 0..1_000 {
        let dim = rng.gen_range(1..=5);
        let n = rng.gen_range(1..=24);
        let c = common::random_configuration(&mut rng, n, dim, 6.0);
        let d = diameter(&c);
        let r = enclosing_ball(&c).radius;
        assert!(d / 2.0 <= r + 1e-9, "diameter {d}, radius {r}");
        assert!(r <= d + 1e-9, "diameter {d}, radius {r}");
    }

    let tol = Tolerance::default();
    let mut planted = 0;
    for round in 0..200 {
        let dim = rng.gen_range(2..=3);
        let n = rng.gen_range(3..=12);
        let k = rng.gen_range(2..=4.min(n));
        let mut hay = common::random_configuration(&mut rng, n, dim, 4.0);
        let needle = common::random_configuration(&mut rng, k, dim, 2.0);
        if round % 2 == 0 {
            let rot = common::random_rotation(&mut rng, dim);
            let shift: Vec<f64> = (0..dim).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let copy = common::apply_isometry(&needle, &rot, &shift);
            let mut pts = hay.points().to_vec();
            pts.truncate(n.saturating_sub(k));
            pts.extend(copy.points().iter().cloned());
            if let Ok(c) = Configuration::new(pts) {
                hay = c;
                planted += 1;
            }
        }
        let got: BTreeSet<Vec<usize>> = congruent_copies(&hay, &needle, tol)
            .iter()
            .map(|m| m.point_set())
            .collect();
        let want = common::brute_force_congruent_sets(&hay, &needle, tol);
        assert_eq!(got, want, "instance {round}");
    }

    let elapsed = start.elapsed();
    println!(
        "criterion 5 PASS: circumradius {rho:.12}, 1000 radius/diameter checks, 200 brute-force matches ({planted} planted), {:?}",
        elapsed
    );
}

#[test]
fn criterion_6_propagation_suite() {
    let start = Instant::now();
    let mut rng = common::rng(6_001);

    // (a) Monotonicity, idempotence, order-confluence on 20 random instances.
    let mut instances_checked = 0;
    while instances_checked < 20 {
        let points = match rng.gen_range(0..3) {
            0 => instances::integer_line(rng.gen_range(4..=12)),
            1 => instances::lattice_box(&[(0, 2), (0, 2)]),
            _ => instances::lattice_box(&[(0, 1), (0, 1), (0, 1)]),
        };
        let forbidden = if rng.gen_bool(0.5) {
            shapes::two_points(1.0)
        } else {
            shapes::right_triangle(1.0, 1.0)
        };
        let r = rng.gen_range(2..=3u64);
        let n_points = points.len();
        let seeds: Vec<(usize, u64)> = (0..rng.gen_range(0..=2usize))
            .map(|_| (rng.gen_range(0..n_points), rng.gen_range(0..r)))
            .collect();
        let Ok(inst) = build_instance(points, &forbidden, r, &seeds, Tolerance::default()) else {
            continue;
        };
        if inst.constraints().is_empty() {
            continue;
        }
        instances_checked += 1;

        let fixed = propagate_fixpoint(&inst);
        let mut prev = propagate_rounds(&inst, 1).map;
        for k in 2..=fixed.rounds {
            let cur = propagate_rounds(&inst, k).map;
            assert!(cur.refines(&prev), "monotonicity violated at round {k}");
            prev = cur;
        }
        let rerun = propagate_rounds(&inst, fixed.rounds + 3);
        assert_eq!(rerun.map, fixed.map, "idempotence violated");
        assert_eq!(rerun.rounds, fixed.rounds);

        for order_seed in 0..10u64 {
            let mut order: Vec<usize> = (0..inst.constraints().len()).collect();
            order.shuffle(&mut common::rng(7_000 + order_seed));
            let permuted = propagate_fixpoint_ordered(&inst, &order);
            assert_eq!(permuted.map, fixed.map, "confluence violated");
        }

        // (b) Soundness against exhaustive valid-coloring enumeration.
        let mut colorings_seen = 0u64;
        exhaustive_valid_colorings(&inst, &mut |coloring| {
            colorings_seen += 1;
            for (i, &c) in coloring.iter().enumerate() {
                assert!(
                    fixed.map.allows(i, c),
                    "valid coloring uses pruned color {c} at point {i}"
                );
            }
        });
        if fixed.contradiction {
            assert_eq!(colorings_seen, 0, "contradiction despite valid colorings");
        }
    }

    // (c) One-dimensional lattice demo: a single seed forces every point.
    let inst = build_instance(
        instances::integer_line(11),
        &shapes::two_points(1.0),
        3,
        &[(0, 0)],
        Tolerance::default(),
    )
    .unwrap();
    let result = propagate_fixpoint(&inst);
    assert!(!result.contradiction);
    for i in 0..11 {
        assert_eq!(result.map.allowed_colors(i), vec![0], "lattice point {i}");
    }

    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 60,
        "expected under 60 s, took {elapsed:?}"
    );
    println!(
        "criterion 6 PASS: 20 instances x (monotone, idempotent, 10-order confluent, sound); lattice demo fully forced, {:?}",
        elapsed
    );
}

fn exhaustive_valid_colorings(
    inst: &gallai_core::propagate::Instance,
    f: &mut impl FnMut(&[u64]),
) {
    fn rainbow(tuple: &[usize], coloring: &[u64]) -> bool {
        for (a, &i) in tuple.iter().enumerate() {
            for &j in &tuple[a + 1..] {
                if coloring[i] == coloring[j] {
                    return false;
                }
            }
        }
        true
    }
    fn dfs(
        coloring: &mut Vec<u64>,
        inst: &gallai_core::propagate::Instance,
        f: &mut impl FnMut(&[u64]),
    ) {
        let n = inst.points().len();
        if coloring.len() == n {
            f(coloring);
            return;
        }
        let at = coloring.len();
        let forced = inst.seeds().iter().find(|(i, _)| *i == at).map(|&(_, c)| c);
        let candidates: Vec<u64> = match forced {
            Some(c) => vec![c],
            None => (0..inst.num_colors()).collect(),
        };
        'next: for c in candidates {
            coloring.push(c);
            for tuple in inst.constraints() {
                if tuple.iter().all(|&i| i < coloring.len()) && rainbow(tuple, coloring) {
                    coloring.pop();
                    continue 'next;
                }
            }
            dfs(coloring, inst, f);
            coloring.pop();
        }
    }
    dfs(&mut Vec::new(), inst, f);
}

#[test]
fn criterion_7_pattern_searcher_on_forced_coloring() {
    // End state forced by the case analysis: the four tetrahedron-derived
    // classes plus {145, 235}, whose members sit at unit distance from
    // every other class and therefore need a color of their own.
    let layer = q5_layer3();
    let idx = |name: &str| {
        layer
            .iter()
            .position(|p| p.positions_string() == name)
            .unwrap()
    };
    let classes: [&[&str]; 5] = [
        &["123", "345"],
        &["234", "125"],
        &["124", "135"],
        &["134", "245"],
        &["145", "235"],
    ];
    let mut colors = vec![ColorId(0); layer.len()];
    for (class_id, members) in classes.iter().enumerate() {
        for name in *members {
            colors[idx(name)] = ColorId(class_id as u64);
        }
    }
    let s = ColoredPointSet::new(hamming_configuration(&layer), colors).unwrap();
    let tol = Tolerance::default();

    let rainbow = find_rainbow(&s, &shapes::unit_square(), tol);
    let mut want = vec![idx("125"), idx("135"), idx("245"), idx("345")];
    want.sort_unstable();
    assert!(
        rainbow.iter().any(|m| m.point_set() == want),
        "verbatim rainbow square missing; found {:?}",
        rainbow.iter().map(|m| m.point_set()).collect::<Vec<_>>()
    );

    let mono = find_mono(&s, &shapes::two_points(1.0), tol);
    assert!(
        mono.is_empty(),
        "unexpected monochromatic unit pairs: {:?}",
        mono.iter().map(|m| m.point_set()).collect::<Vec<_>>()
    );

    // Sanity anchors for the class layout: unit distances verified exactly.
    let d = distance(
        &layer[idx("145")].to_point(),
        &layer[idx("345")].to_point(),
    )
    .unwrap();
    assert!((d - 1.0).abs() < 1e-12);

    println!(
        "criterion 7 PASS: rainbow witness {:?} found, no monochromatic unit pair",
        want
    );
}
