use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use isostab::{ConstantTable, Mode};

fn table_builds(c: &mut Criterion) {
    let mut group = c.benchmark_group("constant_table_build");
    for mode in [Mode::Paper, Mode::Tight] {
        for n in [8usize, 16, 32] {
            group.bench_with_input(
                BenchmarkId::new(mode.to_string(), n),
                &n,
                |b, &n| b.iter(|| ConstantTable::build(black_box(n), mode).unwrap()),
            );
        }
    }
    group.finish();
}

fn budget(c: &mut Criterion) {
    let table = ConstantTable::build(32, Mode::Paper).unwrap();
    c.bench_function("epsilon_sup_n32", |b| {
        b.iter(|| black_box(&table).epsilon_sup())
    });
}

criterion_group!(benches, table_builds, budget);
criterion_main!(benches);
