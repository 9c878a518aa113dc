//! Criterion benchmarks for the core kernels, time stepping and profile solver live in `benches/`.
