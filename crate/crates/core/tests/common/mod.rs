#![allow(dead_code)]

use agreeable::io::generate_random_instance;
use agreeable::Market;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random shape and status quo size for `seed`, each side in `1..=max_side`.
pub fn random_market(seed: u64, max_side: usize, with_status_quo: bool) -> Market {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0f5a_3e00);
    let nw = rng.gen_range(1..=max_side);
    let nf = rng.gen_range(1..=max_side);
    let sq = if with_status_quo { rng.gen_range(0..=nw.min(nf)) } else { 0 };
    generate_random_instance(nw, nf, sq, seed).expect("status quo fits")
}

/// Every shape up to 3 by 3, status quo size cycling with the seed.
pub fn small_suite(seeds: u64) -> Vec<Market> {
    let mut out = Vec::new();
    for seed in 0..seeds {
        for nw in 1..=3 {
            for nf in 1..=3 {
                let sq = (seed as usize) % (nw.min(nf) + 1);
                out.push(generate_random_instance(nw, nf, sq, seed).expect("status quo fits"));
            }
        }
    }
    out
}

/// Seeded random markets up to 6 by 6, each followed by its all-acceptable
/// counterpart.
pub fn theorem1_suite(count: u64) -> Vec<Market> {
    (0..count)
        .flat_map(|seed| {
            let m = random_market(seed, 6, true);
            let acceptable = all_acceptable(&m);
            [m, acceptable]
        })
        .collect()
}

/// The same market with every agent ranking solitude last.
pub fn all_acceptable(market: &Market) -> Market {
    let mut out = market.clone();
    for a in market.agents() {
        let mut ranking: Vec<_> = market.preference(a).ranking().iter().copied().filter(|&x| x != a).collect();
        ranking.push(a);
        let n_opp = ranking.len() - 1;
        let order = agreeable::PreferenceOrder::new(a, ranking, n_opp).expect("permutation");
        out = out.with_preference(order).expect("same domain");
    }
    out
}

/// [`small_suite`] followed by its all-acceptable counterpart, so that cores
/// with several elements are common.
pub fn small_suite_with_acceptable(seeds: u64) -> Vec<Market> {
    let base = small_suite(seeds);
    let acceptable: Vec<Market> = base.iter().map(all_acceptable).collect();
    base.into_iter().chain(acceptable).collect()
}
