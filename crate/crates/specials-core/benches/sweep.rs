use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use specials::group::{enumerate_family, Family};
use specials::{batch, build_ar_quiver, classify::all_syzygies, GroupParams, Strategy};

fn strategies() -> [(&'static str, Strategy); 2] {
    [("sequential", Strategy::Sequential), ("parallel", Strategy::Parallel)]
}

fn bench_batch(c: &mut Criterion) {
    let mut groups = enumerate_family(Family::D, 14);
    groups.extend(enumerate_family(Family::T, 13));
    let mut g = c.benchmark_group("batch");
    g.sample_size(10);
    for (name, s) in strategies() {
        g.bench_with_input(BenchmarkId::new(name, groups.len()), &s, |b, &s| b.iter(|| batch(&groups, s)));
    }
    g.finish();
}

fn bench_syzygies(c: &mut Criterion) {
    let q = build_ar_quiver(&GroupParams::I { m: 31 }).unwrap();
    let mut g = c.benchmark_group("all_syzygies_I31");
    g.sample_size(10);
    for (name, s) in strategies() {
        g.bench_function(name, |b| b.iter(|| all_syzygies(&q, s).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, bench_batch, bench_syzygies);
criterion_main!(benches);
