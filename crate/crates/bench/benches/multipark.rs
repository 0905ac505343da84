use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use multipark::bijection::{enumerate_color_forests, phi, psi};
use multipark::{enumerate_multiparking, p_recursive, tutte, ColoredMultigraph, VertexRanking};

fn complete(n: usize) -> ColoredMultigraph {
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect();
    ColoredMultigraph::from_edge_list(n, &pairs).unwrap()
}

fn doubled_cycle(n: usize) -> ColoredMultigraph {
    let mut pairs = Vec::new();
    for i in 1..=n {
        let j = i % n + 1;
        pairs.push((i, j));
        pairs.push((i, j));
    }
    ColoredMultigraph::from_edge_list(n, &pairs).unwrap()
}

fn enumeration(c: &mut Criterion) {
    let k5 = complete(5);
    c.bench_function("enumerate_multiparking K5 m=5", |b| {
        b.iter(|| enumerate_multiparking(black_box(&k5), 5).unwrap())
    });
    c.bench_function("enumerate_color_forests K5 m=1", |b| {
        b.iter(|| enumerate_color_forests(black_box(&k5), 1).unwrap())
    });
}

fn bijection(c: &mut Criterion) {
    let g = doubled_cycle(5);
    let tau = VertexRanking::identity(5);
    let functions = enumerate_multiparking(&g, 2).unwrap();
    c.bench_function("phi then psi, doubled C5 m=2", |b| {
        b.iter(|| {
            for f in &functions {
                let (forest, _) = phi(&g, &tau, f).unwrap();
                black_box(psi(&g, &tau, &forest).unwrap());
            }
        })
    });
}

fn recursion(c: &mut Criterion) {
    let k7 = complete(7);
    c.bench_function("p_recursive K7", |b| {
        b.iter(|| p_recursive(black_box(&k7)).unwrap())
    });
    c.bench_function("tutte K7", |b| b.iter(|| tutte(black_box(&k7)).unwrap()));
}

criterion_group!(benches, enumeration, bijection, recursion);
criterion_main!(benches);
