//! Shared inputs for the criterion benchmarks.

use agreeable::io::generate_random_instance;
use agreeable::Market;

/// Seeded square markets of side `n` with `sq` status quo pairs.
pub fn markets(n: usize, sq: usize, count: u64) -> Vec<Market> {
    (0..count)
        .map(|seed| generate_random_instance(n, n, sq, seed).expect("sq fits"))
        .collect()
}
