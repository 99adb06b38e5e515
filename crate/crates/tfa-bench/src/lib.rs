//! Benchmark crate; see `benches/transforms.rs`.
