//! Minisum and k-completion baselines.

use crate::bits::{k_completion, BitVector};
use crate::election::{objective, Committee, Election};
use crate::error::Result;

/// The `k` most-approved candidates, ties to the smaller index. Minimizes
/// the sum of Hamming distances.
pub fn minisum_committee(election: &Election) -> Committee {
    let counts = election.approvals();
    let mut order: Vec<usize> = (0..election.m()).collect();
    order.sort_by(|&a, &b| counts[b].cmp(&counts[a]).then(a.cmp(&b)));
    let mut v = BitVector::zeros(election.m());
    for &j in &order[..election.k()] {
        v.set(j, true);
    }
    Committee::new(v, election.k()).expect("exactly k positions set")
}

/// Best k-completion of any single ballot. At most three times the optimum.
pub fn three_approx(election: &Election) -> Result<Committee> {
    let mut best: Option<(usize, BitVector)> = None;
    for ballot in election.ballots() {
        let candidate = k_completion(ballot, election.k())?;
        let value = election.max_distance(&candidate)?;
        let better = match &best {
            None => true,
            Some((v, c)) => (value, &candidate) < (*v, c),
        };
        if better {
            best = Some((value, candidate));
        }
    }
    let (_, v) = best.expect("elections have at least one ballot");
    Committee::new(v, election.k())
}

/// `objective(three_approx(e), e)`, for callers that only need the value.
pub fn three_approx_value(election: &Election) -> Result<usize> {
    objective(&three_approx(election)?, election)
}
