use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use kvpoly::diagram::{canonical_code, parse, random_diagram, random_planar, RandomParams};
use kvpoly::oracle::kv_statesum;
use kvpoly::planar::Evaluator;

const OCTAHEDRON: &str = "V 1 2 3 4\nV 5 6 7 8\nV 9 1 10 5\nV 11 7 12 3\nV 2 9 8 11\nV 4 12 6 10";
const TREFOIL: &str = "X 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3";

fn planar(c: &mut Criterion) {
    let oct = parse(OCTAHEDRON).unwrap();
    c.bench_function("planar/octahedron", |b| b.iter(|| Evaluator::new().planar(black_box(&oct)).unwrap()));
    let big = random_planar(8, 17);
    c.bench_function("planar/random8", |b| b.iter(|| Evaluator::new().planar(black_box(&big)).unwrap()));
}

fn embedded(c: &mut Criterion) {
    let t = parse(TREFOIL).unwrap();
    c.bench_function("eval/trefoil", |b| b.iter(|| Evaluator::new().eval(black_box(&t)).unwrap()));
    let g = random_diagram(RandomParams { vertices: 3, crossings: 4, seed: 5 });
    c.bench_function("eval/v3c4", |b| b.iter(|| Evaluator::new().eval(black_box(&g)).unwrap()));
    let warm = Evaluator::new();
    warm.eval(&g).unwrap();
    c.bench_function("eval/v3c4_memo_hit", |b| b.iter(|| warm.eval(black_box(&g)).unwrap()));
}

fn oracle(c: &mut Criterion) {
    let g = random_diagram(RandomParams { vertices: 2, crossings: 2, seed: 5 });
    c.bench_function("oracle/statesum_v2c2", |b| b.iter(|| kv_statesum(black_box(&g)).unwrap()));
}

fn canon(c: &mut Criterion) {
    c.bench_function("canon/random_v6c6", |b| {
        b.iter_batched(
            || random_diagram(RandomParams { vertices: 6, crossings: 6, seed: 9 }),
            |d| canonical_code(&d),
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(benches, planar, embedded, oracle, canon);
criterion_main!(benches);
