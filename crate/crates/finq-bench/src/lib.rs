//! Criterion benchmarks for the finq pipelines; see `benches/`.
