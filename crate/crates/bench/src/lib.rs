//! Criterion benchmarks for the core algorithms live under `benches/`.
