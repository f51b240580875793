use asuper_bench::{float_fugacities, rational_fugacities};
use asuper_core::fock::verify::{verify_suites, SuiteSelection};
use asuper_core::sampler::{sample, Method, SamplerConfig};
use asuper_core::symfun::elem_sym_table;
use asuper_core::thermo::{gpf, gpf_bruteforce, occupancies, ThermoParams};
use asuper_core::FockSpec;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn symfun(c: &mut Criterion) {
    let mut g = c.benchmark_group("elem_sym_table");
    for n in [16usize, 64, 256] {
        let xs = float_fugacities(n);
        g.bench_with_input(BenchmarkId::new("f64", n), &xs, |b, xs| {
            b.iter(|| elem_sym_table(black_box(xs), n / 2))
        });
    }
    for n in [16usize, 64] {
        let xs = rational_fugacities(n);
        g.bench_with_input(BenchmarkId::new("rational", n), &xs, |b, xs| {
            b.iter(|| elem_sym_table(black_box(xs), n / 2))
        });
    }
    g.finish();
}

fn gpf_routes(c: &mut Criterion) {
    let mut g = c.benchmark_group("gpf");
    for n in [10usize, 16, 20] {
        let params = ThermoParams::new(n as u64 / 2, float_fugacities(n)).unwrap();
        g.bench_with_input(BenchmarkId::new("bruteforce", n), &params, |b, p| {
            b.iter(|| gpf_bruteforce(black_box(p)).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("symfun", n), &params, |b, p| {
            b.iter(|| gpf(black_box(p)))
        });
    }
    let params = ThermoParams::new(5, rational_fugacities(10)).unwrap();
    g.bench_function("occupancies_rational_10", |b| b.iter(|| occupancies(black_box(&params))));
    g.finish();
}

fn verification(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify");
    g.sample_size(10);
    for (p, n) in [(2u64, 3usize), (3, 4), (2, 5)] {
        let spec = FockSpec::new(p, n).unwrap();
        g.bench_function(format!("all_p{p}_n{n}"), |b| {
            b.iter(|| verify_suites(black_box(spec), SuiteSelection::All).unwrap())
        });
    }
    g.finish();
}

fn sampling(c: &mut Criterion) {
    let mut g = c.benchmark_group("sample");
    g.sample_size(10);
    let params = ThermoParams::new(5, vec![1.0; 20]).unwrap();
    let cfg = SamplerConfig::new(params, 100_000, 1, Method::Metropolis);
    g.bench_function("metropolis_p5_n20_1e5", |b| b.iter(|| sample(black_box(&cfg)).unwrap()));
    let params = ThermoParams::new(2, vec![1.0, 2.0, 3.0]).unwrap();
    let cfg = SamplerConfig::new(params, 100_000, 1, Method::ExactCategorical);
    g.bench_function("exact_p2_n3_1e5", |b| b.iter(|| sample(black_box(&cfg)).unwrap()));
    g.finish();
}

criterion_group!(benches, symfun, gpf_routes, verification, sampling);
criterion_main!(benches);
