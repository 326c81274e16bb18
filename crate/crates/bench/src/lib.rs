//! Shared workloads for the criterion benches.

use rnadist_core::oracles::{max_contacts, random_structure_with, SplitMix64};
use rnadist_core::SecondaryStructure;

/// `count` pairs of random structures of length `n`, with contact counts
/// drawn uniformly from `0..=max`.
pub fn random_pairs(n: usize, count: usize, seed: u64) -> Vec<(SecondaryStructure, SecondaryStructure)> {
    let mut rng = SplitMix64::new(seed);
    let max = max_contacts(n);
    (0..count)
        .map(|_| {
            let ka = rng.in_range(0, max);
            let kb = rng.in_range(0, max);
            (
                random_structure_with(&mut rng, n, ka).expect("feasible"),
                random_structure_with(&mut rng, n, kb).expect("feasible"),
            )
        })
        .collect()
}

/// A structure of length `14 · blocks` made of repeated two-family pseudoknots.
pub fn tiled_pseudoknots(blocks: usize) -> SecondaryStructure {
    let text = "((..[[..))..]]".repeat(blocks);
    rnadist_core::codec::parse_dotbracket(&text).expect("pattern is valid")
}
