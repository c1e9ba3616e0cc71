//! Criterion benchmarks for the bijection, oracle, and linear algebra
//! pipelines live under `benches/`. This crate has no library surface.
