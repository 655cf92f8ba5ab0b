use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use twotrans::building::{build_building, check_two_transitive_points};
use twotrans::coset::{double_coset_count_by_enumeration, double_cosets};
use twotrans::CoxeterDiagram;

fn orbit_method(c: &mut Criterion) {
    let mut group = c.benchmark_group("double-cosets");
    for (name, node) in [("D4", 2), ("F4", 1), ("H4", 1), ("E6", 4), ("E7", 7)] {
        let d = CoxeterDiagram::parse(name).unwrap();
        group.bench_with_input(BenchmarkId::new(name, node), &node, |b, &i| {
            b.iter(|| double_cosets(&d, i).unwrap().class_count())
        });
    }
    group.finish();
}

fn word_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("word-enumeration");
    for (name, node) in [("A3", 1), ("B3", 2), ("H3", 1)] {
        let d = CoxeterDiagram::parse(name).unwrap();
        group.bench_with_input(BenchmarkId::new(name, node), &node, |b, &i| {
            b.iter(|| double_coset_count_by_enumeration(&d, i, 1_000_000).unwrap())
        });
    }
    group.finish();
}

fn buildings(c: &mut Criterion) {
    let mut group = c.benchmark_group("building");
    group.sample_size(10);
    for (k, q) in [(2, 3), (3, 2)] {
        group.bench_function(format!("A{k}(q={q})"), |b| {
            b.iter(|| {
                let building = build_building(k, q).unwrap();
                check_two_transitive_points(&building).unwrap().pass()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, orbit_method, word_enumeration, buildings);
criterion_main!(benches);
