//! Sequential against rayon execution for the three data-parallel kernels:
//! a susceptibility scan, an open-chain gap series and the spin Hamiltonian
//! build. Without the `parallel` feature both modes run sequentially.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use xychain::analysis::{gap_series, scan, AxisRange, Quantity, ScanGrid};
use xychain::closedform::ModelParams;
use xychain::exactspin;
use xychain::parallel::Execution;
use xychain::spectrum::Boundary;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn bench_scan(c: &mut Criterion) {
    let grid = ScanGrid {
        alpha: AxisRange::new(0.0, 2.0, 101).unwrap(),
        gamma: AxisRange::new(-1.0, 1.0, 101).unwrap(),
        quantity: Quantity::Susceptibility,
    };
    let mut g = c.benchmark_group("scan_susceptibility_101x101");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| scan(black_box(&grid), exec).unwrap()));
    }
    g.finish();
}

fn bench_gap_series(c: &mut Criterion) {
    let p = ModelParams::new(1.5, 0.6).unwrap();
    let ns = [50, 80, 120, 160, 200, 240, 280, 320];
    let mut g = c.benchmark_group("gap_series_open");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| gap_series(black_box(p), &ns, Boundary::Open, exec).unwrap()));
    }
    g.finish();
}

fn bench_spin_build(c: &mut Criterion) {
    let p = ModelParams::new(0.7, 0.4).unwrap();
    let mut g = c.benchmark_group("spin_hamiltonian_n10");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| exactspin::build(black_box(p), 10, exec).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, bench_scan, bench_gap_series, bench_spin_build);
criterion_main!(benches);
