use criterion::{black_box, criterion_group, criterion_main, Criterion};

use stratakit::classify::classify_quadratic;
use stratakit::divisor_count::{sweep_conjecture_sequential, sweep_conjecture_jobs};
use stratakit::strata_core::validate_stratum;

fn bench_conjecture_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("conjecture_sweep_k3_199");
    group.bench_function("sequential", |b| {
        b.iter(|| sweep_conjecture_sequential(black_box(3), black_box(199), false).unwrap())
    });
    group.bench_function("parallel_default_pool", |b| {
        b.iter(|| sweep_conjecture_jobs(black_box(3), black_box(199), false, 0).unwrap())
    });
    group.bench_function("parallel_4_jobs", |b| {
        b.iter(|| sweep_conjecture_jobs(black_box(3), black_box(199), false, 4).unwrap())
    });
    group.finish();
}

fn quadratic_inputs() -> Vec<Vec<i64>> {
    // all two-to-four entry quadratic signatures in genus 2 and 3 with a
    // metric pole and entries bounded by 12
    let mut out = Vec::new();
    let range = -12i64..=12;
    for a in range.clone() {
        for b in range.clone() {
            for target in [4i64, 8] {
                let rest = target - a - b;
                if a == 0 || b == 0 {
                    continue;
                }
                if rest == 0 {
                    out.push(vec![a, b]);
                } else if range.contains(&rest) {
                    out.push(vec![a, b, rest]);
                }
            }
        }
    }
    out.retain(|orders| {
        orders.iter().all(|&m| m != 0)
            && orders.iter().any(|&m| m <= -2)
            && validate_stratum(2, orders).is_ok()
    });
    out
}

fn bench_quadratic_classification(c: &mut Criterion) {
    let inputs = quadratic_inputs();
    let strata: Vec<_> = inputs.iter().map(|o| validate_stratum(2, o).unwrap()).collect();
    c.bench_function("classify_quadratic_sweep", |b| {
        b.iter(|| {
            let mut count = 0usize;
            for s in &strata {
                count += classify_quadratic(black_box(s)).unwrap().components.len();
            }
            count
        })
    });
}

criterion_group!(benches, bench_conjecture_sweep, bench_quadratic_classification);
criterion_main!(benches);
