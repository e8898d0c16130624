//! Ground-truth machinery: exhaustive optimum, the inaccuracy function of a
//! vote subset relative to a fixed optimum, greedy stable subsets, and a
//! brute-force solver for the auxiliary integer program.

use rayon::prelude::*;

use crate::auxiliary::AuxProblem;
use crate::bits::{lex_key, masks_with_ones, BitVector};
use crate::election::{Committee, Election};
use crate::error::{MavError, Result};

/// Default cap on `m` for exhaustive enumeration.
pub const DEFAULT_MAX_CANDIDATES: usize = 20;
/// Default cap on `β` for brute-forcing the auxiliary program.
pub const DEFAULT_MAX_BETA: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_candidates: usize,
    pub max_beta: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            max_candidates: DEFAULT_MAX_CANDIDATES,
            max_beta: DEFAULT_MAX_BETA,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub committee: Committee,
    pub opt_value: usize,
}

/// Exhaustive minimax optimum over all `C(m, k)` committees; ties go to the
/// lexicographically smallest committee.
pub fn exact_opt(election: &Election, budget: &OracleBudget) -> Result<OracleResult> {
    let m = election.m();
    let limit = budget.max_candidates.min(63);
    if m > limit {
        return Err(MavError::BudgetExceeded {
            what: "exhaustive search candidates",
            needed: m as u64,
            limit: limit as u64,
        });
    }
    let ballots: Vec<u64> = election.ballots().iter().map(|b| b.to_mask()).collect();
    let (value, _, mask) = masks_with_ones(m, election.k())
        .into_par_iter()
        .map(|mask| {
            let value = ballots
                .iter()
                .map(|b| (b ^ mask).count_ones())
                .max()
                .unwrap_or(0);
            (value, lex_key(mask, m), mask)
        })
        .min()
        .expect("at least one committee exists for k <= m");
    Ok(OracleResult {
        committee: Committee::new(BitVector::from_mask(mask, m), election.k())?,
        opt_value: value as usize,
    })
}

/// `s_opt` overwritten by the unanimous values of `votes`.
pub fn t_vector(votes: &[&BitVector], s_opt: &BitVector) -> Result<BitVector> {
    let first = votes.first().ok_or(MavError::EmptySubset)?;
    let m = s_opt.len();
    if let Some(v) = votes.iter().find(|v| v.len() != m) {
        return Err(MavError::LengthMismatch {
            expected: m,
            actual: v.len(),
        });
    }
    let mut t = s_opt.clone();
    for j in 0..m {
        let value = first.get(j);
        if votes.iter().all(|v| v.get(j) == value) {
            t.set(j, value);
        }
    }
    Ok(t)
}

/// Inaccuracy of a vote subset: `d(t(Y), s_opt)`, extended with
/// `ina(∅) = 2·OPT`.
pub fn ina(votes: &[&BitVector], s_opt: &BitVector, opt_value: usize) -> Result<usize> {
    if votes.is_empty() {
        return Ok(2 * opt_value);
    }
    Ok(t_vector(votes, s_opt)?.distance(s_opt))
}

fn ina_of(election: &Election, subset: &[usize], s_opt: &BitVector, opt_value: usize) -> usize {
    let votes: Vec<&BitVector> = subset.iter().map(|&i| &election.ballots()[i]).collect();
    ina(&votes, s_opt, opt_value).expect("ballots share the optimum's length")
}

/// A subset `X` of `min(R, n)` ballot indices (ascending) such that adding
/// any other ballot lowers `ina` by at most `OPT / R`.
///
/// Greedy chain from ballot 0, always adding the ballot with the largest
/// drop (smallest index on ties); the chain is cut at the step with the
/// smallest drop among the first `R` and padded with the smallest unused
/// indices.
pub fn find_stable_subset(
    election: &Election,
    r: usize,
    s_opt: &BitVector,
    opt_value: usize,
) -> Result<Vec<usize>> {
    if r == 0 {
        return Err(MavError::InvalidParameter("R must be at least 1".into()));
    }
    if s_opt.len() != election.m() {
        return Err(MavError::LengthMismatch {
            expected: election.m(),
            actual: s_opt.len(),
        });
    }
    let n = election.n();
    if r >= n {
        return Ok((0..n).collect());
    }

    let mut chain = vec![0usize];
    let mut current = ina_of(election, &chain, s_opt, opt_value);
    // drops[r - 1] = ina(S_r) - ina(S_{r+1})
    let mut drops = Vec::with_capacity(r);
    while drops.len() < r {
        let mut best: Option<(usize, usize, usize)> = None;
        for s in (0..n).filter(|s| !chain.contains(s)) {
            let mut ext = chain.clone();
            ext.push(s);
            let next = ina_of(election, &ext, s_opt, opt_value);
            let drop = current - next;
            if best.is_none_or(|(d, _, _)| drop > d) {
                best = Some((drop, s, next));
            }
        }
        let (drop, s, next) = best.expect("chain shorter than n has an extension");
        drops.push(drop);
        chain.push(s);
        current = next;
    }

    let cut = drops
        .iter()
        .enumerate()
        .min_by_key(|&(i, &d)| (d, i))
        .map(|(i, _)| i + 1)
        .expect("R >= 1");
    let mut stable: Vec<usize> = chain[..cut].to_vec();
    for s in 0..n {
        if stable.len() == r {
            break;
        }
        if !stable.contains(&s) {
            stable.push(s);
        }
    }
    stable.sort_unstable();
    Ok(stable)
}

/// Exhaustive minimum of the auxiliary program over all `s'` with `k'`
/// ones. Returns `None` when `k' > β`.
///
/// Walks `{0,1}^β` depth first with `0` before `1`, so the first minimizer
/// found is the lexicographically smallest.
pub fn aux_ip_bruteforce(aux: &AuxProblem, budget: &OracleBudget) -> Result<Option<(BitVector, usize)>> {
    let beta = aux.beta();
    if beta > budget.max_beta {
        return Err(MavError::BudgetExceeded {
            what: "auxiliary brute force star positions",
            needed: beta as u64,
            limit: budget.max_beta as u64,
        });
    }
    if aux.k_star() > beta {
        return Ok(None);
    }
    let mut best: Option<(BitVector, usize)> = None;
    let mut current = BitVector::zeros(beta);
    fn walk(
        aux: &AuxProblem,
        pos: usize,
        ones: usize,
        current: &mut BitVector,
        best: &mut Option<(BitVector, usize)>,
    ) {
        let beta = current.len();
        let need = aux.k_star();
        if ones > need || need - ones > beta - pos {
            return;
        }
        if pos == beta {
            let q = aux
                .star_ballots()
                .iter()
                .zip(aux.offsets())
                .map(|(b, &o)| crate::bits::hamming(current, b).expect("same β") + o)
                .max()
                .unwrap_or(0);
            if best.as_ref().is_none_or(|(_, bq)| q < *bq) {
                *best = Some((current.clone(), q));
            }
            return;
        }
        walk(aux, pos + 1, ones, current, best);
        current.set(pos, true);
        walk(aux, pos + 1, ones + 1, current, best);
        current.set(pos, false);
    }
    walk(aux, 0, 0, &mut current, &mut best);
    Ok(best)
}
