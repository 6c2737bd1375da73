use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::family::{check_ground_set, SetFamily, SetMask};

/// Generator behind [`random_union_closed`]; recorded in reports.
pub const PRNG_NAME: &str = "ChaCha8Rng::seed_from_u64";

/// Union closure of `generator_count` uniform subsets of `[n]`, plus `∅`.
/// Deterministic in `(n, generator_count, seed)`.
pub fn random_union_closed(n: usize, generator_count: usize, seed: u64) -> Result<SetFamily> {
    check_ground_set(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = SetMask::full(n).bits();
    let generators = (0..generator_count).map(|_| SetMask::from_bits(rng.next_u64() & full));
    SetFamily::union_closure(std::iter::once(SetMask::EMPTY).chain(generators), n)
}
