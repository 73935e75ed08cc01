//! Criterion benchmarks for `reachnet-core`; see `benches/reachnet.rs`.
