//! Benchmarks for the exact checkers live under `benches/`.
