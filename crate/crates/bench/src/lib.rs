//! Criterion benchmarks for monoext; see `benches/`.
