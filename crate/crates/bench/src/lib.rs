//! Criterion benchmarks for the search and matching kernels; see `benches/`.
