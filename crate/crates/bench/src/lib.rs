//! Seeded workloads shared by the benchmarks.

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use regulus::sample::{self, Instance};
use regulus::Fp;

pub const SEED: u64 = 0x5eed;

/// Instances over 𝔽_p cycling through p ∈ {2, 3, 5} and n ∈ {1, 2, 3}.
pub fn fp_batch(count: usize) -> Vec<Instance<Fp>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..count)
        .map(|i| sample::random_fp_instance(&mut rng, [2, 3, 5][i % 3], 1 + i % 3, 2))
        .collect()
}

pub fn arithmetic_batch(count: usize) -> Vec<Instance<BigInt>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    (0..count)
        .map(|i| sample::random_arithmetic_instance(&mut rng, [2, 3, 5][i % 3], 1 + i % 3, 2))
        .collect()
}
