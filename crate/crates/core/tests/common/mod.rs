#![allow(dead_code)]

use mav_core::{BitVector, Election};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_vector<R: Rng>(rng: &mut R, m: usize) -> BitVector {
    BitVector::from_bools((0..m).map(|_| rng.gen_bool(0.5)))
}

pub fn random_election<R: Rng>(rng: &mut R, n: (usize, usize), m: (usize, usize), k_max: usize) -> Election {
    let n = rng.gen_range(n.0..=n.1);
    let m = rng.gen_range(m.0..=m.1);
    let k = rng.gen_range(0..=m.min(k_max));
    let ballots = (0..n).map(|_| random_vector(rng, m)).collect();
    Election::new(ballots, k).unwrap()
}

/// Random subset of `0..n` of the given size, ascending.
pub fn random_subset<R: Rng>(rng: &mut R, n: usize, size: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let mut out = idx[..size].to_vec();
    out.sort_unstable();
    out
}

/// Minimum over all size-k committees of `f`, enumerating every 0/1 string
/// of length m in increasing string order.
pub fn brute_min<F: Fn(&BitVector) -> usize>(m: usize, k: usize, f: F) -> (usize, BitVector) {
    let mut best: Option<(usize, BitVector)> = None;
    for code in 0u64..(1 << m) {
        // position 0 is the most significant bit, so `code` order is string order
        let v = BitVector::from_bools((0..m).map(|j| (code >> (m - 1 - j)) & 1 == 1));
        if v.ones() != k {
            continue;
        }
        let value = f(&v);
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, v));
        }
    }
    best.unwrap()
}
