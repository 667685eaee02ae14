//! Benchmarks live in `benches/`; run them with `cargo bench -p m2z4-bench`.
