use criterion::{black_box, criterion_group, criterion_main, Criterion};

use isostab::linalg::gaussian_matrix;
use isostab::{certify, householder_qr, jacobi_svd, ConstantTable, Mode};
use isostab_bench::benchmark_map;

fn decompositions(c: &mut Criterion) {
    let a16 = gaussian_matrix(16, 7).unwrap();
    c.bench_function("householder_qr_16", |b| {
        b.iter(|| householder_qr(black_box(&a16)).unwrap())
    });
    let a8 = gaussian_matrix(8, 11).unwrap();
    c.bench_function("jacobi_svd_8", |b| {
        b.iter(|| jacobi_svd(black_box(&a8)).unwrap())
    });
}

fn certification(c: &mut Criterion) {
    let table = ConstantTable::build(4, Mode::Paper).unwrap();
    let pm = benchmark_map(1);
    c.bench_function("certify_n4_24pts", |b| {
        b.iter(|| certify(black_box(&pm), &table, false).unwrap())
    });
    c.bench_function("distortion_n4_24pts", |b| {
        b.iter(|| black_box(&pm).distortion())
    });
}

criterion_group!(benches, decompositions, certification);
criterion_main!(benches);
