use criterion::{criterion_group, criterion_main, Criterion};
use tbim::selection::{select, SelectOptions};
use tbim::{Algorithm, SimulationParams};
use tbim_bench::fixture;

fn selection(c: &mut Criterion) {
    let g = fixture(500, 5000, 3);
    let opts = SelectOptions::new(SimulationParams::new(10, 100, 11).unwrap());
    let mut group = c.benchmark_group("select");
    group.sample_size(10);
    for algo in [
        Algorithm::Approx,
        Algorithm::LazyApprox,
        Algorithm::CelfPp,
        Algorithm::Deg,
        Algorithm::Ddh,
        Algorithm::Sdh,
        Algorithm::Irie,
    ] {
        group.bench_function(algo.name(), |b| b.iter(|| select(&g, algo, 4000, &opts).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, selection);
criterion_main!(benches);
