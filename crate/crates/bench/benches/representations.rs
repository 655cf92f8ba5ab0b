use criterion::{criterion_group, criterion_main, Criterion};
use twotrans::rep::{character, real_type, sym2_decompose, tensor_decompose, RootDatum, Weight};

fn weight(s: &str) -> Weight {
    s.parse().unwrap()
}

fn decompositions(c: &mut Criterion) {
    let b4 = RootDatum::new("B4").unwrap();
    let spin = weight("0,0,0,1");
    c.bench_function("sym2 B4 spin", |b| {
        b.iter(|| sym2_decompose(&b4, &spin).unwrap())
    });

    let e6 = RootDatum::new("E6").unwrap();
    let minuscule = weight("1,0,0,0,0,0");
    c.bench_function("tensor E6 27x27", |b| {
        b.iter(|| tensor_decompose(&e6, &minuscule, &minuscule).unwrap())
    });

    let c4 = RootDatum::new("C4").unwrap();
    let lambda = weight("1,1,0,1");
    c.bench_function("character C4", |b| {
        b.iter(|| character(&c4, &lambda).unwrap())
    });
    c.bench_function("real type C4", |b| {
        b.iter(|| real_type(&c4, &lambda).unwrap())
    });
}

criterion_group!(benches, decompositions);
criterion_main!(benches);
