use mav_core::{BitVector, Committee, Election};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, CliResult};

/// Planted instance: a uniform size-`k` committee and `n` ballots, each
/// obtained from it by flipping exactly `radius` uniformly chosen positions.
/// The planted committee certifies `OPT <= radius`.
pub fn generate_instance(n: usize, m: usize, k: usize, radius: usize, seed: u64) -> CliResult<(Election, Committee)> {
    if n == 0 {
        return Err(CliError::Usage("n must be at least 1".into()));
    }
    if k > m {
        return Err(CliError::Usage(format!("k = {k} exceeds m = {m}")));
    }
    if radius > m {
        return Err(CliError::Usage(format!("radius {radius} exceeds m = {m}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut planted = BitVector::zeros(m);
    for j in sample(&mut rng, m, k) {
        planted.set(j, true);
    }
    let ballots = (0..n)
        .map(|_| {
            let mut b = planted.clone();
            for j in sample(&mut rng, m, radius) {
                b.set(j, !b.get(j));
            }
            b
        })
        .collect();
    Ok((Election::new(ballots, k)?, Committee::new(planted, k)?))
}
