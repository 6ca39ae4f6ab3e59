//! Benchmarks for `catalan-core`. Run with `cargo bench -p catalan-bench`.
