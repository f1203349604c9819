//! Property and oracle cross-checks for the geometry operations.

mod common;

use proptest::prelude::*;
use rand::Rng;

use gallai_core::geometry::{
    affine_dimension, box_width, circumradius, congruent_copies, diameter, distance,
    enclosing_ball, shapes, simplex_heights, Configuration, DistanceProfile, ExactHammingPoint,
    Point, Tolerance,
};

#[test]
fn triangle_inequality_on_random_triples() {
    let mut rng = common::rng(11);
    let tol = Tolerance::default();
    for _ in 0..500 {
        let dim = rng.gen_range(1..=5);
        let c = common::random_configuration(&mut rng, 3, dim, 10.0);
        let ab = distance(c.point(0), c.point(1)).unwrap();
        let bc = distance(c.point(1), c.point(2)).unwrap();
        let ac = distance(c.point(0), c.point(2)).unwrap();
        assert!(ac <= ab + bc + 4.0 * tol.abs_eps);
        assert!((distance(c.point(1), c.point(0)).unwrap() - ab).abs() == 0.0);
    }
}

#[test]
fn congruent_copies_agree_with_brute_force() {
    let mut rng = common::rng(23);
    let tol = Tolerance::default();
    for round in 0..60 {
        let dim = rng.gen_range(2..=3);
        let n = rng.gen_range(4..=10);
        let k = rng.gen_range(2..=4.min(n));
        let mut hay = common::random_configuration(&mut rng, n, dim, 4.0);
        let needle = common::random_configuration(&mut rng, k, dim, 2.0);
        // Plant a rotated copy half the time so matches are not vacuous.
        if round % 2 == 0 && n >= k {
            let rot = common::random_rotation(&mut rng, dim);
            let shift: Vec<f64> = (0..dim).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let planted = common::apply_isometry(&needle, &rot, &shift);
            let mut pts: Vec<Point> = hay.points().to_vec();
            pts.truncate(n - k);
            pts.extend(planted.points().iter().cloned());
            match Configuration::new(pts) {
                Ok(c) => hay = c,
                Err(_) => continue, // collision with an existing point; skip
            }
        }
        let got: Vec<Vec<usize>> = congruent_copies(&hay, &needle, tol)
            .iter()
            .map(|m| m.point_set())
            .collect();
        let want: Vec<Vec<usize>> = common::brute_force_congruent_sets(&hay, &needle, tol)
            .into_iter()
            .collect();
        assert_eq!(got, want, "round {round}");
    }
}

#[test]
fn every_match_profile_recheck() {
    let mut rng = common::rng(31);
    let tol = Tolerance::default();
    for _ in 0..40 {
        let hay = common::random_configuration(&mut rng, 9, 2, 3.0);
        let needle = common::random_configuration(&mut rng, 3, 2, 2.0);
        let needle_profile = DistanceProfile::of(&needle);
        for m in congruent_copies(&hay, &needle, tol) {
            let sub = hay.subset(&m.point_set());
            assert!(DistanceProfile::of(&sub).matches(&needle_profile, tol));
        }
    }
}

#[test]
fn circumradius_bounds_and_support() {
    let mut rng = common::rng(47);
    for _ in 0..300 {
        let dim = rng.gen_range(1..=5);
        let n = rng.gen_range(2..=20);
        let c = common::random_configuration(&mut rng, n, dim, 5.0);
        let d = diameter(&c);
        let ball = enclosing_ball(&c);
        assert!(d / 2.0 <= ball.radius + 1e-9);
        assert!(ball.radius <= d + 1e-9);
        let mut on_boundary = 0;
        for p in c.points() {
            let dist = distance(&ball.center, p).unwrap();
            assert!(dist <= ball.radius + 1e-9);
            if dist >= ball.radius - 1e-7 {
                on_boundary += 1;
            }
        }
        assert!(on_boundary >= 2, "support set has {on_boundary} points");
    }
}

#[test]
fn affine_dimension_is_embedding_and_rotation_invariant() {
    let mut rng = common::rng(59);
    let tol = Tolerance::default();
    for _ in 0..60 {
        let dim = rng.gen_range(1..=4);
        let n = rng.gen_range(1..=8);
        let c = common::random_configuration(&mut rng, n, dim, 3.0);
        let rank = affine_dimension(&c, tol);

        let padded = c.zero_padded(dim + 2);
        assert_eq!(affine_dimension(&padded, tol), rank);

        let rot = common::random_rotation(&mut rng, dim + 2);
        let shift: Vec<f64> = (0..dim + 2).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let moved = common::apply_isometry(&padded, &rot, &shift);
        assert_eq!(affine_dimension(&moved, tol), rank);
    }
}

#[test]
fn simplex_heights_isometry_invariant() {
    let mut rng = common::rng(61);
    for _ in 0..60 {
        let dim = rng.gen_range(2..=4);
        let n = rng.gen_range(3..=6);
        let c = common::random_configuration(&mut rng, n, dim, 3.0);
        let rot = common::random_rotation(&mut rng, dim);
        let shift: Vec<f64> = (0..dim).map(|_| rng.gen_range(-4.0..4.0)).collect();
        let moved = common::apply_isometry(&c, &rot, &shift);
        let h1 = simplex_heights(&c).unwrap();
        let h2 = simplex_heights(&moved).unwrap();
        for (a, b) in h1.iter().zip(&h2) {
            assert!((a - b).abs() < 1e-8, "{a} vs {b}");
        }
    }
}

#[test]
fn width_2d_matches_dense_sweep() {
    let mut rng = common::rng(67);
    for _ in 0..40 {
        let n = rng.gen_range(3..=12);
        let c = common::random_configuration(&mut rng, n, 2, 5.0);
        let exact = box_width(&c);
        assert!(exact.exact);
        let sweep = common::sweep_width_2d(&c, 20_000);
        // The sweep is an upper bound that converges from above.
        assert!(exact.value <= sweep + 1e-9);
        assert!(sweep - exact.value < 1e-3, "sweep {sweep} vs {}", exact.value);
    }
}

#[test]
fn q5_circumradius_from_exact_points() {
    let q5 = gallai_core::geometry::hamming_configuration(&gallai_core::geometry::q5_full());
    assert!((circumradius(&q5) - (5f64 / 8.0).sqrt()).abs() < 1e-9);
}

proptest! {
    #[test]
    fn hamming_distances_are_exact(a in 0u8..32, b in 0u8..32) {
        let pa = ExactHammingPoint::new(a).unwrap();
        let pb = ExactHammingPoint::new(b).unwrap();
        let sym_diff = (a ^ b).count_ones();
        prop_assert_eq!(pa.sq_distance_times_2(&pb), sym_diff);
        let float = distance(&pa.to_point(), &pb.to_point()).unwrap();
        prop_assert!((float * float * 2.0 - sym_diff as f64).abs() < 1e-12);
    }

    #[test]
    fn distance_profile_is_relabeling_invariant(perm_seed in 0u64..1000) {
        let c = shapes::regular_tetrahedron(1.0);
        let mut order: Vec<usize> = (0..c.len()).collect();
        // Cheap deterministic shuffle.
        let mut s = perm_seed;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
            order.swap(i, (s as usize) % (i + 1));
        }
        let shuffled = c.subset(&order);
        prop_assert!(DistanceProfile::of(&c)
            .matches(&DistanceProfile::of(&shuffled), Tolerance::default()));
    }
}
