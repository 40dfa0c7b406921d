use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use certroot::fta::{all_roots_batch, ContinuationOptions};
use certroot::local::{audit_certificate, build_model};
use certroot::{ComplexValue, Execution, Polynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn random_roots(rng: &mut ChaCha8Rng, degree: usize) -> Vec<ComplexValue> {
    (0..degree)
        .map(|_| ComplexValue::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

fn bench_all_roots(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let polys: Vec<Polynomial> = (0..64)
        .map(|_| Polynomial::from_roots(&random_roots(&mut rng, 6), ComplexValue::new(1.0, 0.0)).unwrap())
        .collect();
    let opts = ContinuationOptions::default();
    let mut group = c.benchmark_group("all_roots_batch/64xdeg6");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| all_roots_batch(&polys, &opts, exec))
        });
    }
    group.finish();
}

fn bench_audit(c: &mut Criterion) {
    let f = Polynomial::from_roots(
        &random_roots(&mut ChaCha8Rng::seed_from_u64(12), 8),
        ComplexValue::new(1.0, 0.0),
    )
    .unwrap();
    let z0 = ComplexValue::new(0.3, -0.2);
    let cert = build_model(&f, z0, 1.0 + z0.norm()).unwrap().certificate();
    let mut group = c.benchmark_group("audit_certificate/4096");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| audit_certificate(&f, &cert, 4096, 1e-10, 5, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_all_roots, bench_audit);
criterion_main!(benches);
