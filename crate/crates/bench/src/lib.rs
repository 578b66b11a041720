//! Benchmark-only crate; see `benches/pascube.rs`.
