//! Sequential against parallel execution on the batch-heavy entry points.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};
use nervekit::cech::{cech_delta_with, verify_nerve_theorem_with};
use nervekit::fixtures::fig1;
use nervekit::homology::simplicial_homology_with;
use nervekit::nerves::completion_with;
use nervekit::random::{random_complex, random_cover, rng};
use nervekit::{face_poset, order_complex, Coefficients, Execution, IndexedCover};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

/// Rebuilt per iteration so the cached nerve faces are recomputed.
fn fresh(cov: &IndexedCover) -> IndexedCover {
    IndexedCover::new(
        cov.ambient().clone(),
        cov.index_order().to_vec(),
        cov.members().to_vec(),
    )
    .unwrap()
}

fn covers() -> Vec<(&'static str, IndexedCover)> {
    let mut r = rng(7);
    let big = (0..40)
        .map(|_| random_cover(&mut r, 12, 5))
        .max_by_key(|c| c.len() * c.ambient().num_all_simplices())
        .unwrap();
    vec![("fig1", fig1()), ("random", big)]
}

fn nerve_theorem(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_nerve_theorem");
    for (name, cov) in covers() {
        for (mode, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(mode, name), &cov, |b, cov| {
                b.iter_batched(
                    || fresh(cov),
                    |cov| {
                        black_box(verify_nerve_theorem_with(&cov, 1, Coefficients::Rational, exec).unwrap())
                    },
                    BatchSize::SmallInput,
                )
            });
        }
    }
    g.finish();
}

fn cech(c: &mut Criterion) {
    let mut g = c.benchmark_group("cech_delta");
    for (name, cov) in covers() {
        for (mode, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(mode, name), &cov, |b, cov| {
                b.iter_batched(
                    || fresh(cov),
                    |cov| black_box(cech_delta_with(&cov, 5, exec)),
                    BatchSize::SmallInput,
                )
            });
        }
    }
    g.finish();
}

fn completion(c: &mut Criterion) {
    let mut g = c.benchmark_group("completion");
    for (name, cov) in covers() {
        for (mode, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(mode, name), &cov, |b, cov| {
                b.iter_batched(
                    || fresh(cov),
                    |cov| black_box(completion_with(&cov, exec).unwrap()),
                    BatchSize::SmallInput,
                )
            });
        }
    }
    g.finish();
}

fn homology(c: &mut Criterion) {
    let mut g = c.benchmark_group("subdivision_homology");
    let k = random_complex(&mut rng(8), 9, 3);
    let sd = order_complex(&face_poset(&k));
    for (mode, exec) in MODES {
        g.bench_function(mode, |b| {
            b.iter(|| black_box(simplicial_homology_with(&sd, 3, Coefficients::Rational, exec)))
        });
    }
    g.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = nerve_theorem, cech, completion, homology
}
criterion_main!(benches);
