//! Compares the parallel root split of the branch-and-bound solver against
//! its sequential fallback, plus the reduction pipeline for context.
//!
//! With `--no-default-features` both solver arms run sequentially, so the
//! comparison is only meaningful with the default `parallel` feature on.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use eccforge_core::cnf::{normalize, parse_dimacs, regularize};
use eccforge_core::cocktail::build_cocktail;
use eccforge_core::graph::Graph;
use eccforge_core::reduction::reduce;
use eccforge_core::selfcheck::{random_graph, SplitMix64};
use eccforge_core::solver::{min_cover, solve_exact_with, SolveOptions};
use eccforge_core::transfer::cover_from_assignment;

fn solver_options() -> [(&'static str, SolveOptions); 2] {
    [
        (
            "parallel",
            SolveOptions {
                parallel: true,
                ..SolveOptions::default()
            },
        ),
        (
            "sequential",
            SolveOptions {
                parallel: false,
                ..SolveOptions::default()
            },
        ),
    ]
}

fn bench_random_min_cover(c: &mut Criterion) {
    let mut rng = SplitMix64::new(0xbe9c);
    let graphs: Vec<Graph> = (0..4).map(|_| random_graph(&mut rng, 11, 50)).collect();
    let mut group = c.benchmark_group("min-cover/random-11v");
    group.sample_size(20);
    for (mode, opts) in solver_options() {
        group.bench_function(BenchmarkId::from_parameter(mode), |b| {
            b.iter(|| {
                for g in &graphs {
                    let (size, _) = min_cover(g, &opts).unwrap();
                    assert!(size > 0);
                }
            })
        });
    }
    group.finish();
}

fn bench_cocktail_decision(c: &mut Criterion) {
    let g = build_cocktail(3).unwrap().into_graph();
    let mut group = c.benchmark_group("decision/cocktail-ell3");
    for (mode, opts) in solver_options() {
        group.bench_function(BenchmarkId::from_parameter(mode), |b| {
            b.iter(|| {
                assert!(solve_exact_with(&g, 4, &opts).unwrap().is_none());
                assert!(solve_exact_with(&g, 5, &opts).unwrap().is_some());
            })
        });
    }
    group.finish();
}

fn bench_reduction_pipeline(c: &mut Criterion) {
    let text = "p cnf 6 8\n1 2 3 0\n-1 4 5 0\n2 -4 6 0\n-2 -3 -6 0\n1 -5 6 0\n-1 2 -6 0\n3 4 -5 0\n-3 5 6 0\n";
    let norm = normalize(&parse_dimacs(text).unwrap()).unwrap();
    let reg = regularize(&norm);
    let witness = eccforge_core::cnf::brute_force_sat(&norm).unwrap().unwrap();
    c.bench_function("pipeline/reduce-and-complete", |b| {
        b.iter(|| {
            let inst = reduce(&reg).unwrap();
            let phi = reg.lift_assignment(&witness).unwrap();
            let cover = cover_from_assignment(&inst, &phi).unwrap();
            assert_eq!(cover.len() as u64, inst.k);
        })
    });
}

criterion_group!(
    benches,
    bench_random_min_cover,
    bench_cocktail_decision,
    bench_reduction_pipeline
);
criterion_main!(benches);
