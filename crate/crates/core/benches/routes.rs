use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use grfrob::corpus::qf_instances;
use grfrob::frobenius::{analyze_qf, frobenius_report};
use grfrob::par::{worker_count, ExecMode};

fn sigma_routes(c: &mut Criterion) {
    let entries = qf_instances();
    let prepared: Vec<_> = entries.iter().map(|e| (e.algebra.clone(), analyze_qf(&e.algebra, 0).expect("qf analysis"))).collect();
    let mut group = c.benchmark_group(format!("sigma_routes/{}_workers", worker_count()));
    group.sample_size(10);
    for (label, mode) in [("sequential", ExecMode::Sequential), ("parallel", ExecMode::Parallel)] {
        group.bench_function(label, |b| {
            b.iter(|| {
                for (a, qf) in &prepared {
                    black_box(frobenius_report(a, qf, mode).expect("report"));
                }
            })
        });
    }
    group.finish();
}

criterion_group!(benches, sigma_routes);
criterion_main!(benches);
