//! Criterion benchmarks for the alexlin engine; see `benches/`.
