use std::hint::black_box;

use blockade::angular::enumerate_channels;
use blockade::radial::{contract, kinetic_matrix, DvrGrid};
use blockade::spectrum::{direct_single_levels, solve_point, PairHamiltonian};
use blockade_bench::{kag_tweezer, small_basis};
use criterion::{criterion_group, criterion_main, Criterion};

fn radial(c: &mut Criterion) {
    let (s, t) = kag_tweezer(100.0);
    let grid = DvrGrid::covering(s.r6.min(t.waist) / 32.0, 6.0 * t.waist, 0.5 * s.mass).unwrap();
    c.bench_function("kinetic_matrix", |b| b.iter(|| kinetic_matrix(black_box(&grid))));
    c.bench_function("contract_20", |b| {
        b.iter(|| contract(black_box(&grid), |r| t.potential(r), 0, 20).unwrap())
    });
    c.bench_function("single_levels", |b| {
        b.iter(|| direct_single_levels(black_box(&s), &t, &small_basis()).unwrap())
    });
}

fn pair(c: &mut Criterion) {
    let (s, t) = kag_tweezer(100.0);
    let params = small_basis();
    let mut group = c.benchmark_group("pair");
    group.sample_size(10);
    group.bench_function("build", |b| {
        b.iter(|| PairHamiltonian::build(black_box(&s), &t, &params, true).unwrap())
    });
    let h = PairHamiltonian::build(&s, &t, &params, true).unwrap();
    let basis = enumerate_channels(0, params.l_max, true);
    group.bench_function("j0_eigenvalues", |b| b.iter(|| h.lowest_energy(black_box(&basis)).unwrap()));
    group.bench_function("solve_point", |b| b.iter(|| solve_point(black_box(&s), &t, &params).unwrap()));
    group.finish();
}

criterion_group!(benches, radial, pair);
criterion_main!(benches);
