//! Fixed inputs for the kernel benchmarks.

use lech_core::sample::{instance_rng, random_ideal, SamplerConfig};
use lech_core::MonomialIdeal;

pub const SEED: u64 = 2024;

/// `count` seeded random m-primary ideals in dimension `d`.
pub fn ideals(d: usize, count: u64, cfg: SamplerConfig) -> Vec<MonomialIdeal> {
    (0..count)
        .map(|i| random_ideal(&mut instance_rng(SEED, i), d, &cfg))
        .collect()
}
