//! Deterministic sampling from a user seed.

use rand::seq::index;
use rand::SeedableRng;
use rand_xoshiro::SplitMix64;

/// Default seed for sampled passes.
pub const DEFAULT_SEED: u64 = 0xC0DE;

/// `count` distinct indices from `0..n` (all of them if `count >= n`),
/// sorted ascending. Depends only on `(n, count, seed)`.
pub fn sample_indices(n: usize, count: usize, seed: u64) -> Vec<usize> {
    if count >= n {
        return (0..n).collect();
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut picked = index::sample(&mut rng, n, count).into_vec();
    picked.sort_unstable();
    picked
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_distinct() {
        let a = sample_indices(1000, 64, 7);
        assert_eq!(a, sample_indices(1000, 64, 7));
        assert_ne!(a, sample_indices(1000, 64, 8));
        let mut d = a.clone();
        d.dedup();
        assert_eq!(d.len(), 64);
        assert_eq!(sample_indices(5, 10, 1), vec![0, 1, 2, 3, 4]);
    }
}
