use criterion::{criterion_group, criterion_main, Criterion};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

use gallai_core::colorings::{verify_no_mono, ColoringRule, Region};
use gallai_core::finite_verify::{
    build_triple_csp, builtin_proof_offsets, enumerate_partitions, solve_triple_csp,
    verify_q5_lemma,
};
use gallai_core::geometry::{
    congruent_copies, enclosing_ball, shapes, Configuration, Point, Tolerance,
};
use gallai_core::propagate::{build_instance, instances, propagate_fixpoint};

fn random_points(n: usize, dim: usize, seed: u64) -> Configuration {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let pts: Vec<Point> = (0..n)
            .map(|_| Point::new((0..dim).map(|_| rng.gen_range(-10.0..10.0)).collect()).unwrap())
            .collect();
        if let Ok(c) = Configuration::new(pts) {
            return c;
        }
    }
}

fn bench_enclosing_ball(c: &mut Criterion) {
    let cloud = random_points(400, 3, 1);
    c.bench_function("enclosing_ball_400x3", |b| {
        b.iter(|| black_box(enclosing_ball(black_box(&cloud))))
    });
}

fn bench_congruent_copies(c: &mut Criterion) {
    let hay = instances::lattice_box(&[(0, 5), (0, 5)]);
    let square = shapes::unit_square();
    let tol = Tolerance::default();
    c.bench_function("congruent_copies_square_in_36grid", |b| {
        b.iter(|| black_box(congruent_copies(black_box(&hay), black_box(&square), tol)))
    });
}

fn bench_partitions(c: &mut Criterion) {
    c.bench_function("enumerate_partitions_10", |b| {
        b.iter(|| black_box(enumerate_partitions(10).unwrap().count()))
    });
}

fn bench_q5_lemma(c: &mut Criterion) {
    let mut group = c.benchmark_group("exhaustive");
    group.sample_size(10);
    group.bench_function("verify_q5_lemma", |b| b.iter(|| black_box(verify_q5_lemma())));
    group.finish();
}

fn bench_triple_csp(c: &mut Criterion) {
    let csp = build_triple_csp(&builtin_proof_offsets());
    c.bench_function("solve_triple_csp_builtin", |b| {
        b.iter(|| black_box(solve_triple_csp(black_box(&csp))))
    });
}

fn bench_sampler(c: &mut Criterion) {
    let rule = ColoringRule::Block { a: 1.0, num_colors: 3 };
    let rect = shapes::rectangle(1.0, 3f64.sqrt());
    let region = Region::centered_cube(20.0, 2);
    c.bench_function("verify_no_mono_1000_trials", |b| {
        b.iter(|| black_box(verify_no_mono(&rule, &rect, &region, 1000, 7).unwrap()))
    });
}

fn bench_propagation(c: &mut Criterion) {
    let slab = instances::lattice_box(&[(0, 1), (-2, 2), (-2, 2)]);
    let origin = slab
        .points()
        .iter()
        .position(|p| p.coords() == [0.0, 0.0, 0.0])
        .unwrap();
    let ex = slab
        .points()
        .iter()
        .position(|p| p.coords() == [1.0, 0.0, 0.0])
        .unwrap();
    let inst = build_instance(
        slab,
        &shapes::right_triangle(1.0, 1.0),
        5,
        &[(origin, 0), (ex, 1)],
        Tolerance::default(),
    )
    .unwrap();
    c.bench_function("propagate_fixpoint_slab", |b| {
        b.iter(|| black_box(propagate_fixpoint(black_box(&inst))))
    });
}

criterion_group!(
    benches,
    bench_enclosing_ball,
    bench_congruent_copies,
    bench_partitions,
    bench_q5_lemma,
    bench_triple_csp,
    bench_sampler,
    bench_propagation
);
criterion_main!(benches);
