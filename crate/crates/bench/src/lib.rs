//! Criterion benchmarks for the pairpart kernels; see `benches/kernels.rs`.
