use criterion::{criterion_group, criterion_main, Criterion};
use isonorm_bench::{parity_grid, word_map};
use isonorm_core::census::census;
use isonorm_core::{convex_hull, enumerate_eulerian, eulco_classes, homology_basis};

fn eulerian(c: &mut Criterion) {
    let map = word_map("{a1, a2, b1 b2⁻¹}");
    c.bench_function("enumerate_eulerian/census1", |b| b.iter(|| enumerate_eulerian(&map)));
    let basis = homology_basis(&map).unwrap();
    c.bench_function("eulco_classes/census1", |b| b.iter(|| eulco_classes(&map, &basis).unwrap()));
}

fn hull(c: &mut Criterion) {
    let mut g = c.benchmark_group("convex_hull");
    g.sample_size(10);
    for r in [1, 3] {
        let pts = parity_grid(4, r);
        g.bench_function(format!("grid4_r{r}"), |b| b.iter(|| convex_hull(&pts).unwrap()));
    }
    g.finish();
}

fn census_search(c: &mut Criterion) {
    let mut g = c.benchmark_group("census");
    g.sample_size(10);
    g.bench_function("bound2", |b| b.iter(|| census(2).unwrap()));
    g.finish();
}

criterion_group!(benches, eulerian, hull, census_search);
criterion_main!(benches);
