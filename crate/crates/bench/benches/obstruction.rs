use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use twistcheck::obstruction::analyze_text;
use twistcheck::{ell, johnson_twist, random_word, theta0, twist_consistency};

fn bench_analyze(c: &mut Criterion) {
    c.bench_function("analyze/worked_example", |b| {
        b.iter(|| analyze_text(2, black_box("x1 x2 y2 x2^-1"), black_box("y2 x1^-1")).unwrap())
    });
}

fn bench_ell(c: &mut Criterion) {
    let mut group = c.benchmark_group("ell");
    for len in [10usize, 100, 1000] {
        let w = random_word(3, len, 11);
        group.bench_with_input(BenchmarkId::from_parameter(len), &w, |b, w| b.iter(|| ell(black_box(w))));
    }
    group.finish();
}

fn bench_twist(c: &mut Criterion) {
    let a = random_word(2, 12, 3);
    let b = random_word(2, 12, 4);
    c.bench_function("johnson_twist/degree2", |bench| {
        let t = theta0(&b, 2).unwrap();
        bench.iter(|| johnson_twist(black_box(&a), black_box(&t)).unwrap())
    });
    let a = twistcheck::parse_word("x1 x2 y2 x2^-1", 2).unwrap();
    let b = twistcheck::parse_word("y2 x1^-1", 2).unwrap();
    c.bench_function("twist_consistency/worked_example", |bench| {
        bench.iter(|| twist_consistency(2, black_box(&a), black_box(&b)).unwrap())
    });
}

criterion_group!(benches, bench_analyze, bench_ell, bench_twist);
criterion_main!(benches);
