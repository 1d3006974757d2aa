//! Brute-force enumeration of all 4-regular maps on three vertices, used to
//! confirm the census independently of the word model.

use std::collections::BTreeMap;

use crate::map::CombinatorialMap;

/// Summary of the enumeration over every perfect matching of 12 darts.
#[derive(Clone, Debug)]
pub struct ExhaustiveMaps {
    pub matchings: usize,
    pub connected: usize,
    /// Connected maps with `V - E + F = 2 - 2g` for some integer `g >= 0`.
    pub euler_consistent: usize,
    /// One-faced maps (genus 2), up to isomorphism with reflections.
    pub one_faced: Vec<CombinatorialMap>,
    /// Same, counted up to orientation-preserving isomorphism only.
    pub one_faced_oriented: usize,
}

fn matchings(n: usize) -> Vec<Vec<usize>> {
    fn go(pairing: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(first) = pairing.iter().position(|&p| p == usize::MAX) else {
            out.push(pairing.clone());
            return;
        };
        for second in first + 1..pairing.len() {
            if pairing[second] == usize::MAX {
                pairing[first] = second;
                pairing[second] = first;
                go(pairing, out);
                pairing[first] = usize::MAX;
                pairing[second] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![usize::MAX; n], &mut out);
    out
}

pub fn exhaustive_unicellular_maps() -> ExhaustiveMaps {
    let all = matchings(12);
    let mut connected = 0;
    let mut euler_consistent = 0;
    let mut classes: BTreeMap<Vec<u32>, CombinatorialMap> = BTreeMap::new();
    let mut oriented = std::collections::BTreeSet::new();
    for pairing in &all {
        let map = CombinatorialMap::from_pairing_unchecked(pairing.clone());
        if !map.is_connected() {
            continue;
        }
        connected += 1;
        let faces = map.faces().len();
        let chi = map.euler_characteristic();
        if chi % 2 == 0 && chi <= 2 {
            euler_consistent += 1;
        }
        if faces == 1 {
            oriented.insert(map.canonical_code(false));
            classes.entry(map.canonical_code(true)).or_insert(map);
        }
    }
    ExhaustiveMaps {
        matchings: all.len(),
        connected,
        euler_consistent,
        one_faced: classes.into_values().collect(),
        one_faced_oriented: oriented.len(),
    }
}
