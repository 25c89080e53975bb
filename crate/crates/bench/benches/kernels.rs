use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use pairpart::conjectures::{
    permanent2_coefficient, permanent2_matrix, permanent_naive, permanent_ryser,
};
use pairpart::dyson::{dyson_bruteforce, dyson_via_evaluation, DysonInstance};
use pairpart::nullstellensatz::{
    cn_coefficient, integral_over_field, pairing_grid, pairing_polynomial,
};
use pairpart::poly::{difference_product, Integers};
use pairpart::solvers::{solve_pair_partition, PartitionInstance};
use pairpart::sumsets::{verify_cd_bound, CdMode};

fn solvers(c: &mut Criterion) {
    let feasible = PartitionInstance::new(23, &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11], None).unwrap();
    c.bench_function("pair partition n=23", |b| {
        b.iter(|| solve_pair_partition(black_box(&feasible)))
    });
    let infeasible = PartitionInstance::new(15, &[5; 7], None).unwrap();
    c.bench_function("pair partition n=15 infeasible", |b| {
        b.iter(|| solve_pair_partition(black_box(&infeasible)))
    });
}

fn polynomials(c: &mut Criterion) {
    c.bench_function("expand (x_i - x_j)^4, m=4", |b| {
        b.iter(|| difference_product(Integers, 4, |_, _| 4, usize::MAX).unwrap())
    });
    let inst = DysonInstance::new(vec![2, 3, 3]).unwrap();
    c.bench_function("dyson bruteforce (2,3,3)", |b| {
        b.iter(|| dyson_bruteforce(black_box(&inst)))
    });
    c.bench_function("dyson evaluation (2,3,3)", |b| {
        b.iter(|| dyson_via_evaluation(black_box(&inst)))
    });
    let f = pairing_polynomial(7, &[1, 2, 3], false).unwrap();
    let grid = pairing_grid(7, &[1, 2, 3]).unwrap();
    c.bench_function("grid coefficient p=7", |b| {
        b.iter(|| cn_coefficient(&f, &grid).unwrap())
    });
    let f = pairing_polynomial(7, &[1, 2, 3], true).unwrap();
    c.bench_function("integral over F_7^3", |b| {
        b.iter(|| integral_over_field(&f).unwrap())
    });
}

fn cyclotomic(c: &mut Criterion) {
    let d = [1, 2, 4, 5, 7, 8];
    c.bench_function("permanent2 n=13 m=6", |b| {
        b.iter(|| permanent2_coefficient(13, black_box(&d)).unwrap())
    });
    let matrix = permanent2_matrix(17, &[1, 2, 3, 4, 5, 6, 7, 8]).unwrap();
    c.bench_function("permanent naive m=8", |b| {
        b.iter(|| permanent_naive(17, black_box(&matrix)))
    });
    c.bench_function("permanent ryser m=8", |b| {
        b.iter(|| permanent_ryser(17, black_box(&matrix)))
    });
}

fn sumsets(c: &mut Criterion) {
    c.bench_function("sumset bound Z/8 exhaustive", |b| {
        b.iter(|| verify_cd_bound(2, 3, CdMode::Exhaustive, 0).unwrap())
    });
}

criterion_group!(benches, solvers, polynomials, cyclotomic, sumsets);
criterion_main!(benches);
