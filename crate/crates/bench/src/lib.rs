//! Criterion benchmarks for the qhankel kernels live in `benches/`.
