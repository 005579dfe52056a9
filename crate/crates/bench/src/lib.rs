//! Criterion benchmarks for the evaluators; see `benches/evaluate.rs`.
