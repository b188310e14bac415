//! Criterion benchmarks for `e2-core`; see `benches/`.
