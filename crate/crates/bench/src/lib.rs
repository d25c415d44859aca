//! Instance families shared by the benchmarks.

use diskscale_core::gadgets::gen_random;
use diskscale_core::geom::{int, rat, Instance};

/// Random points whose density stays roughly constant as `n` grows.
pub fn sparse_instance(n: usize, k: usize, seed: u64) -> Instance {
    let side = 2 * (n as f64).sqrt().ceil() as u32;
    gen_random(n, k, rat(1, 2), int(2), side, seed ^ n as u64).expect("valid parameters")
}

/// Points packed into a small box, so the unit disk graph is nearly complete.
pub fn dense_instance(n: usize, k: usize, seed: u64) -> Instance {
    let side = 2 + (n as f64).sqrt() as u32 / 4;
    gen_random(n, k, int(1), int(2), side, seed ^ n as u64).expect("valid parameters")
}
