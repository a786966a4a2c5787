use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use h2tea::analysis::{figure_data, grid_from_range, sweep, FigureId, Metric, SweepSpec};
use h2tea::{Execution, Pathway, Scenario};

fn modes() -> [(&'static str, Execution); 2] {
    [("serial", Execution::Serial), ("parallel", Execution::Parallel)]
}

fn irr_sweep(c: &mut Criterion) {
    let s = Scenario::default();
    let mut group = c.benchmark_group("irr_price_sweep");
    for step in [0.05, 0.005] {
        let spec = SweepSpec::new(
            "h2_price",
            grid_from_range(0.0, 10.0, step).unwrap(),
            Metric::Irr,
            Pathway::ALL.to_vec(),
            false,
        )
        .unwrap();
        for (name, exec) in modes() {
            group.bench_with_input(BenchmarkId::new(name, spec.grid.len()), &spec, |b, spec| {
                b.iter(|| sweep(black_box(&s), spec, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn breakeven_sweep(c: &mut Criterion) {
    let s = Scenario::default();
    let spec = SweepSpec::new(
        "capex",
        grid_from_range(500.0, 2500.0, 2.0).unwrap(),
        Metric::Breakeven,
        Pathway::ALL.to_vec(),
        false,
    )
    .unwrap();
    let mut group = c.benchmark_group("breakeven_capex_sweep");
    for (name, exec) in modes() {
        group.bench_function(name, |b| b.iter(|| sweep(black_box(&s), &spec, exec).unwrap()));
    }
    group.finish();
}

fn figures(c: &mut Criterion) {
    let s = Scenario::default();
    let mut group = c.benchmark_group("figure_fig5");
    for (name, exec) in modes() {
        group.bench_function(name, |b| {
            b.iter(|| figure_data(FigureId::Fig5, black_box(&s), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, irr_sweep, breakeven_sweep, figures);
criterion_main!(benches);
