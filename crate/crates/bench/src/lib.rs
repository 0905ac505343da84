//! Criterion benchmarks for the multipark toolkit live under `benches/`.
