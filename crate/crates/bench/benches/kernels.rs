use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lech_bench::ideals;
use lech_core::sample::SamplerConfig;
use lech_core::sweep::{compute_invariant, ClosureClass, Family, Quantity, Theory};
use lech_core::{lattice_points_outside_union, newton_covolume, volume_complement_union};

fn staircase(c: &mut Criterion) {
    let mut g = c.benchmark_group("staircase");
    for d in [2, 3] {
        let input = ideals(d, 16, SamplerConfig::default());
        g.bench_with_input(BenchmarkId::new("volume", d), &input, |b, is| {
            b.iter(|| {
                for i in is {
                    black_box(volume_complement_union(i.gens(), d).unwrap());
                }
            })
        });
        g.bench_with_input(BenchmarkId::new("lattice_count", d), &input, |b, is| {
            b.iter(|| {
                for i in is {
                    black_box(lattice_points_outside_union(i.gens(), d).unwrap());
                }
            })
        });
    }
    g.finish();
}

fn newton(c: &mut Criterion) {
    let mut g = c.benchmark_group("newton");
    for d in [2, 3] {
        let input = ideals(d, 16, SamplerConfig::default());
        g.bench_with_input(BenchmarkId::new("covolume", d), &input, |b, is| {
            b.iter(|| {
                for i in is {
                    black_box(newton_covolume(i.gens(), d).unwrap());
                }
            })
        });
        g.bench_with_input(BenchmarkId::new("closure", d), &input, |b, is| {
            b.iter(|| {
                for i in is {
                    black_box(i.integral_closure().unwrap());
                }
            })
        });
    }
    g.finish();
}

fn sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("sweep");
    g.sample_size(10);
    let family = Family::Semigroup { generators: vec![3, 5, 7] };
    g.bench_function("semigroup_drop_sup_all", |b| {
        b.iter(|| {
            black_box(compute_invariant(Quantity::DropSup, ClosureClass::All, Theory::HilbertSamuel, &family, 14).unwrap())
        })
    });
    g.bench_function("cross_ratio_inf", |b| {
        b.iter(|| {
            black_box(compute_invariant(Quantity::RatioInf, ClosureClass::All, Theory::HilbertKunz, &Family::Cross, 8).unwrap())
        })
    });
    g.finish();
}

criterion_group!(benches, staircase, newton, sweep);
criterion_main!(benches);
