//! Sequential vs parallel execution on the hot loops.

use std::hint::black_box;

use armtunnel::complex_enum::{enumerate_cubes_with, enumerate_states_with};
use armtunnel::pip::build_coral_pip;
use armtunnel::Execution;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn states(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_states");
    for (m, n) in [(2, 14), (3, 12)] {
        for (name, exec) in MODES {
            g.bench_with_input(
                BenchmarkId::new(name, format!("{m}x{n}")),
                &(m, n),
                |b, &(m, n)| b.iter(|| enumerate_states_with(m, n, usize::MAX, exec).unwrap()),
            );
        }
    }
    g.finish();
}

fn cubes(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_cubes");
    let graph = enumerate_states_with(2, 12, usize::MAX, Execution::Parallel).unwrap();
    for (name, exec) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| enumerate_cubes_with(black_box(&graph), None, exec))
        });
    }
    g.finish();
}

fn diameter(c: &mut Criterion) {
    let mut g = c.benchmark_group("all_pairs_diameter");
    g.sample_size(10);
    let graph = enumerate_states_with(2, 10, usize::MAX, Execution::Parallel).unwrap();
    for (name, exec) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| black_box(&graph).all_pairs_diameter_with(exec))
        });
    }
    g.finish();
}

fn ideals(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_ideals");
    let cp = build_coral_pip(2, 10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| cp.pip().enumerate_ideals_with(exec)));
    }
    g.finish();
}

criterion_group!(benches, states, cubes, diameter, ideals);
criterion_main!(benches);
