//! Criterion benchmarks for the obstruction pipeline live in `benches/`.
