//! Compares the default worker pool with a single worker on the
//! data-parallel kernels. Build with `--no-default-features` to time the
//! purely sequential fallback.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qlo_core::{growth, par, presets, Rational, ThermoContext, TruncatedRep};

fn workers() -> Vec<(&'static str, Option<usize>)> {
    vec![("one-worker", Some(1)), ("default-pool", None)]
}

fn run<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match threads {
        Some(n) => par::with_threads(n, f),
        None => f(),
    }
}

fn bench_growth(c: &mut Criterion) {
    let g = presets::cycle(5).unwrap();
    let mut group = c.benchmark_group("growth_table cycle:5 W=14");
    for (label, threads) in workers() {
        group.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| run(threads, || growth::growth_table(&g, Rational::from_integer(14)).unwrap()))
        });
    }
    group.finish();
}

fn bench_enumerate(c: &mut Criterion) {
    let g = presets::path(4).unwrap();
    let mut group = c.benchmark_group("enumerate path:4 W=8");
    group.sample_size(10);
    for (label, threads) in workers() {
        group.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| run(threads, || growth::enumerate_up_to(&g, Rational::from_integer(8)).unwrap()))
        });
    }
    group.finish();
}

fn bench_kms(c: &mut Criterion) {
    let g = presets::path(3).unwrap();
    let ctx = ThermoContext::new(g.clone()).unwrap();
    let ts = g.traces_up_to_length(2);
    let n = ts.len();
    let quads: Vec<usize> = (0..n.pow(4)).collect();
    let mut group = c.benchmark_group("kms identity path:3 length 2");
    group.sample_size(10);
    for (label, threads) in workers() {
        group.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| {
                run(threads, || {
                    par::find_failure(&quads, |&k| {
                        let (a, b, c, d) = (k % n, k / n % n, k / n / n % n, k / n / n / n);
                        ctx.kms_identity_check(&ts[a], &ts[b], &ts[c], &ts[d]).unwrap().holds
                    })
                })
            })
        });
    }
    group.finish();
}

fn bench_nica(c: &mut Criterion) {
    let g = presets::free(3).unwrap();
    let rep = TruncatedRep::new(&g, Rational::from_integer(6)).unwrap();
    let ts = g.traces_up_to_length(3);
    let mut group = c.benchmark_group("nica free:3 length 3");
    group.sample_size(10);
    for (label, threads) in workers() {
        group.bench_function(BenchmarkId::from_parameter(label), |b| {
            b.iter(|| run(threads, || rep.nica_check_all(&ts).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_growth, bench_enumerate, bench_kms, bench_nica);
criterion_main!(benches);
