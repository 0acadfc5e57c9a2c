//! Criterion benchmarks for the `renner` library; see `benches/`.
