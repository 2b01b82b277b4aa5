use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use crn_immune::catalog::NamedNetwork;
use crn_immune::fixed_points::{enumerate_fixed_points_with, SupportPattern};
use crn_immune::robustness::{sweep, SweepSpec};
use crn_immune::{CrnModel, Execution, ModelParameters};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    let cases = [
        (NamedNetwork::BranchCycle3, vec![1.0, 3.0, 4.0]),
        (NamedNetwork::TShape4, vec![1.0, 1.0, 2.0, 2.0]),
        (NamedNetwork::Composed5, vec![3.0, 2.0, 1.0, 2.0, 1.0]),
    ];
    for (net, f) in cases {
        let m = CrnModel::new(net.network(), ModelParameters::unit_pc(f, 1.0, 0.4, 0.16).unwrap()).unwrap();
        for (label, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(label, net.name()), &m, |b, m| {
                b.iter(|| enumerate_fixed_points_with(black_box(m), 12, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    let spec = SweepSpec {
        nominal: ModelParameters::unit_pc(vec![3.0, 2.0, 1.0, 2.0, 1.0], 1.0, 2.0 / 3.0, 4.0 / 9.0).unwrap(),
        relative_radius: 0.01,
        samples: 1000,
        seed: 0,
        support: SupportPattern::from_one_based(&[1, 3, 5], &[1, 2, 4]).unwrap(),
    };
    let net = NamedNetwork::Composed5.network();
    for (label, exec) in MODES {
        group.bench_function(BenchmarkId::new(label, "composed5/1000"), |b| {
            b.iter(|| sweep(black_box(&spec), &net, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, enumeration, sweeps);
criterion_main!(benches);
