use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use spatial_lk::moves::{canonical_diagram, random_homotopy_walk};
use spatial_lk::smith::{random_unimodular, smith_normal_form, IntMatrix};
use spatial_lk::{diagram_invariant, linking_matrix};

fn snf(c: &mut Criterion) {
    for n in [4usize, 8, 16] {
        let u = random_unimodular(n, 7, 4 * n * n);
        let v = random_unimodular(n, 11, 4 * n * n);
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { i as i64 + 1 } else { 0 })
                    .collect()
            })
            .collect();
        let d = IntMatrix::from_rows(&rows);
        let m = &(&u * &d) * &v;
        c.bench_function(&format!("snf {n}x{n}"), |b| {
            b.iter(|| smith_normal_form(black_box(&m)))
        });
    }
}

fn invariant(c: &mut Criterion) {
    let base = canonical_diagram(4, 4, &[1, 2, 6]).unwrap();
    let (d, _) = random_homotopy_walk(&base, 80, 3);
    c.bench_function("linking matrix after 80-step walk", |b| {
        b.iter(|| linking_matrix(black_box(&d)).unwrap())
    });
    c.bench_function("invariant after 80-step walk", |b| {
        b.iter(|| diagram_invariant(black_box(&d)).unwrap())
    });
    c.bench_function("random walk 40 steps", |b| {
        b.iter(|| random_homotopy_walk(black_box(&base), 40, 5))
    });
}

criterion_group!(benches, snf, invariant);
criterion_main!(benches);
