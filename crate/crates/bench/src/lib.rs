//! Shared fixtures for the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fewsum_core::generate;
use fewsum_core::PointSet;

pub fn sharp_family(d: usize, n: usize) -> PointSet {
    generate::chr_family(d, n).expect("valid family parameters")
}

pub fn seeded_random_set(d: usize, n: usize, box_side: u64, seed: u64) -> PointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    generate::random_lattice(d, n, box_side, &mut rng).expect("valid draw")
}
