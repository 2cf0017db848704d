use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qvir::macdonald::{clear_memory_cache, macdonald_p, modified_h};
use qvir::{fock, partitions, whittaker};

fn build(c: &mut Criterion) {
    let mut g = c.benchmark_group("macdonald_p_degree");
    g.sample_size(10);
    for n in [3, 4, 5] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |bn, &n| {
            bn.iter(|| {
                clear_memory_cache();
                partitions(n).iter().map(|l| macdonald_p(l).len()).sum::<usize>()
            })
        });
    }
    g.finish();

    let mut g = c.benchmark_group("modified_h_degree");
    g.sample_size(10);
    for n in [3, 4] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |bn, &n| {
            bn.iter(|| {
                clear_memory_cache();
                partitions(n).iter().map(|l| modified_h(l).len()).sum::<usize>()
            })
        });
    }
    g.finish();
}

fn modes(c: &mut Criterion) {
    let mut g = c.benchmark_group("modes");
    g.sample_size(10);
    g.bench_function("eta_and_d_modes_upto_3", |bn| bn.iter(|| fock::all_modes(3).len()));
    g.bench_function("oracle_solve_4", |bn| {
        bn.iter(|| {
            clear_memory_cache();
            whittaker::oracle_solve(4).unwrap()
        })
    });
    g.finish();
}

criterion_group!(benches, build, modes);
criterion_main!(benches);
