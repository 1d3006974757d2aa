//! Inputs shared by the benchmarks.

use isonorm_core::census::word_to_map;
use isonorm_core::CombinatorialMap;

/// The map of a census word, e.g. `"{a1, a2, b1 b2⁻¹}"`.
pub fn word_map(word: &str) -> CombinatorialMap {
    word_to_map(&word.parse().unwrap()).unwrap().map
}

/// Points of the cube `[-r, r]^d` whose coordinates all have the parity of `r`.
pub fn parity_grid(d: usize, r: i64) -> Vec<Vec<i64>> {
    let side: Vec<i64> = (-r..=r).step_by(2).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|p| {
                side.iter().map(move |&x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}
