use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use maxdeg::bounds::max_degree_bounds_float;
use maxdeg::constants::solve_class_constants;
use maxdeg::oracle::enumerate;
use maxdeg::sampler::{experiment::sample_rng, Sampler, Tables};
use maxdeg::spectrum::{degree_table, Spectrum};
use maxdeg::GraphClass;

fn constants(c: &mut Criterion) {
    for class in GraphClass::ALL {
        c.bench_function(&format!("constants/{class}"), |b| b.iter(|| solve_class_constants(black_box(class), 30).unwrap()));
    }
}

fn spectrum(c: &mut Criterion) {
    let mut g = c.benchmark_group("spectrum");
    g.sample_size(10);
    g.bench_function("exact conn-sp n=25", |b| b.iter(|| degree_table(GraphClass::CONN_SP, black_box(25), 24).unwrap()));
    g.bench_function("float 2conn-outerplanar n=300", |b| {
        b.iter(|| Spectrum::float(GraphClass::TWO_CONN_OUTERPLANAR, black_box(300), 12, None).unwrap())
    });
    g.bench_function("float bounds conn-sp n=50", |b| b.iter(|| max_degree_bounds_float(GraphClass::CONN_SP, black_box(50)).unwrap()));
    g.finish();
}

fn sampler(c: &mut Criterion) {
    let mut g = c.benchmark_group("sampler");
    g.sample_size(10);
    g.bench_function("tables conn-sp n=4096", |b| b.iter(|| Tables::float(GraphClass::CONN_SP, black_box(4096))));
    for class in GraphClass::ALL {
        let s = Sampler::float(class, 4096, None).unwrap();
        let mut i = 0;
        g.bench_function(format!("sample {class} n=4096"), |b| {
            b.iter(|| {
                i += 1;
                s.sample_raw(4096, &mut sample_rng(0, 4096, i)).unwrap().max_degree()
            })
        });
    }
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle");
    g.sample_size(10);
    g.bench_function("enumerate conn-sp n=5", |b| b.iter(|| enumerate(GraphClass::CONN_SP, black_box(5), false).unwrap()));
    g.finish();
}

criterion_group!(benches, constants, spectrum, sampler, oracle);
criterion_main!(benches);
