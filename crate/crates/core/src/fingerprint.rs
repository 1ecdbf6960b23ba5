//! Renaming-invariant fingerprints of seeds.

use std::hash::{Hash, Hasher};

use rustc_hash::FxHasher;

use crate::seed::Seed;

/// Shape of `F_i` with every cluster exponent tagged by the colour of its
/// slot; coefficient exponents and coefficient magnitudes are kept.
fn signature(s: &Seed, i: usize, colours: &[usize]) -> String {
    let ring = s.ring();
    let fixed = ring.cluster_range().start;
    let mut terms: Vec<String> = s
        .poly(i)
        .terms()
        .iter()
        .map(|(m, c)| {
            let mut vars: Vec<(i32, usize)> = (0..s.rank())
                .map(|j| (m[ring.cluster_var(j)], colours[j]))
                .filter(|&(e, _)| e != 0)
                .collect();
            vars.sort_unstable();
            format!("{}:{:?}:{:?}", c.magnitude(), &m[..fixed], vars)
        })
        .collect();
    terms.sort();
    format!("{}|{}", colours[i], terms.join(","))
}

/// Colour refinement over the exchange polynomials. Equal fingerprints are
/// necessary for two seeds to be similar.
pub fn similarity_fingerprint(s: &Seed) -> u64 {
    let n = s.rank();
    let mut colours = vec![0usize; n];
    let mut classes = 1;
    let sigs = loop {
        let sigs: Vec<String> = (0..n).map(|i| signature(s, i, &colours)).collect();
        let mut sorted: Vec<&String> = sigs.iter().collect();
        sorted.sort();
        sorted.dedup();
        let next: Vec<usize> = sigs.iter().map(|x| sorted.binary_search(&x).unwrap()).collect();
        let stable = sorted.len() == classes;
        classes = sorted.len();
        colours = next;
        if stable {
            break sigs;
        }
    };
    let mut sorted = sigs;
    sorted.sort();
    let mut h = FxHasher::default();
    sorted.hash(&mut h);
    h.finish()
}
