//! The three solvers for the auxiliary program and their dispatch.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::params::{case1_threshold, AuxCase, PtasParams};
use crate::auxiliary::AuxProblem;
use crate::bits::{k_completion, lex_key, BitVector};
use crate::error::{MavError, Result};
use crate::lp::{build_aux_lp, solve_lp, LpOutcome};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxSolution {
    pub s_prime: BitVector,
    /// `max_i d(s', s_i') + offset_i`.
    pub q: usize,
    pub case_used: AuxCase,
}

fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u128::MAX;
        }
    }
    acc
}

/// Exact optimum by scanning all `2^β` star assignments.
pub fn solve_aux_case1(aux: &AuxProblem, params: &PtasParams) -> Result<Option<AuxSolution>> {
    let beta = aux.beta();
    let limit = params.limits.max_case1_beta.min(63);
    if beta > limit {
        return Err(MavError::BudgetExceeded {
            what: "case 1 star positions",
            needed: beta as u64,
            limit: limit as u64,
        });
    }
    let k = aux.k_star() as u32;
    if k as usize > beta {
        return Ok(None);
    }
    let ballots: Vec<u64> = aux.star_ballots().iter().map(BitVector::to_mask).collect();
    let offsets = aux.offsets();
    let mut best: Option<(usize, u64, u64)> = None;
    for mask in 0u64..(1u64 << beta) {
        if mask.count_ones() != k {
            continue;
        }
        let q = ballots
            .iter()
            .zip(offsets)
            .map(|(b, &o)| (b ^ mask).count_ones() as usize + o)
            .max()
            .unwrap_or(0);
        let key = lex_key(mask, beta);
        if best.is_none_or(|(bq, bk, _)| (q, key) < (bq, bk)) {
            best = Some((q, key, mask));
        }
    }
    Ok(best.map(|(q, _, mask)| AuxSolution {
        s_prime: BitVector::from_mask(mask, beta),
        q,
        case_used: AuxCase::ExhaustiveBeta,
    }))
}

/// Exact optimum by scanning every placement of `k'` ones among the `β`
/// star positions.
pub fn solve_aux_case2(aux: &AuxProblem, params: &PtasParams) -> Result<Option<AuxSolution>> {
    let beta = aux.beta();
    let k = aux.k_star();
    if k > beta {
        return Ok(None);
    }
    let placements = binomial(beta as u64, k as u64);
    if placements > params.limits.max_case2_placements as u128 {
        return Err(MavError::BudgetExceeded {
            what: "case 2 placements",
            needed: placements.min(u64::MAX as u128) as u64,
            limit: params.limits.max_case2_placements,
        });
    }
    let ballots = aux.star_ballots();
    // d(s', b) = ones(b) + k' - 2 |s' ∩ b|
    let base: Vec<usize> = ballots
        .iter()
        .zip(aux.offsets())
        .map(|(b, &o)| b.ones() + k + o)
        .collect();
    let mut overlap = vec![0usize; ballots.len()];
    let mut chosen: Vec<usize> = (0..k).collect();
    for (i, b) in ballots.iter().enumerate() {
        overlap[i] = chosen.iter().filter(|&&j| b.get(j)).count();
    }
    let mut best: Option<(usize, BitVector)> = None;
    loop {
        let q = base
            .iter()
            .zip(&overlap)
            .map(|(&b, &o)| b - 2 * o)
            .max()
            .unwrap_or(0);
        if best.as_ref().is_none_or(|(bq, _)| q <= *bq) {
            let mut s = BitVector::zeros(beta);
            for &j in &chosen {
                s.set(j, true);
            }
            if best.as_ref().is_none_or(|(bq, bs)| (q, &s) < (*bq, bs)) {
                best = Some((q, s));
            }
        }

        // next k'-subset of positions in lexicographic order
        let Some(i) = (0..k).rev().find(|&i| chosen[i] < beta - k + i) else {
            break;
        };
        for t in i..k {
            let old = chosen[t];
            let new = if t == i { old + 1 } else { chosen[t - 1] + 1 };
            if old != new {
                for (o, b) in overlap.iter_mut().zip(ballots) {
                    *o = *o - b.get(old) as usize + b.get(new) as usize;
                }
                chosen[t] = new;
            }
        }
    }
    Ok(best.map(|(q, s_prime)| AuxSolution {
        s_prime,
        q,
        case_used: AuxCase::ExhaustiveK,
    }))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for one rounding trial, a pure function of the run seed, the vote
/// subset, `k'` and the trial number.
pub fn trial_seed(seed: u64, subset: &[usize], k_star: usize, trial: usize) -> u64 {
    let mut h = splitmix64(seed);
    for &i in subset {
        h = splitmix64(h ^ i as u64);
    }
    h = splitmix64(h ^ (subset.len() as u64).rotate_left(32));
    h = splitmix64(h ^ k_star as u64);
    splitmix64(h ^ trial as u64)
}

/// LP relaxation followed by randomized rounding: each star coordinate is
/// set to 1 with probability equal to its LP value, then repaired to `k'`
/// ones by k-completion. Keeps the best of `params.trials` trials and, when
/// enabled, the rounding that takes the `k'` largest LP values.
pub fn solve_aux_case3(aux: &AuxProblem, params: &PtasParams) -> Result<Option<AuxSolution>> {
    let beta = aux.beta();
    let k = aux.k_star();
    let lp = build_aux_lp(aux);
    let fractional = match solve_lp(&lp)? {
        LpOutcome::Optimal(sol) => sol.x,
        LpOutcome::Infeasible => return Ok(None),
        LpOutcome::Unbounded => {
            return Err(MavError::Solver("auxiliary relaxation reported unbounded".into()))
        }
    };
    let probs: Vec<f64> = fractional[..beta]
        .iter()
        .map(|&p| {
            let p = p.clamp(0.0, 1.0);
            if p < 1e-9 {
                0.0
            } else if p > 1.0 - 1e-9 {
                1.0
            } else {
                p
            }
        })
        .collect();

    let mut best: Option<(usize, BitVector)> = None;
    let mut consider = |s: BitVector| -> Result<()> {
        let s = k_completion(&s, k)?;
        let q = aux.value_of(&s);
        if best.as_ref().is_none_or(|(bq, bs)| (q, &s) < (*bq, bs)) {
            best = Some((q, s));
        }
        Ok(())
    };

    for trial in 0..params.trials {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(params.seed, aux.subset(), k, trial));
        let s = BitVector::from_bools(probs.iter().map(|&p| rng.gen::<f64>() < p));
        consider(s)?;
    }
    if params.deterministic_fallback {
        let mut order: Vec<usize> = (0..beta).collect();
        order.sort_by(|&a, &b| probs[b].total_cmp(&probs[a]).then(a.cmp(&b)));
        let mut s = BitVector::zeros(beta);
        for &j in &order[..k] {
            s.set(j, true);
        }
        consider(s)?;
    }
    if best.is_none() {
        return Err(MavError::InvalidParameter(
            "LP rounding needs at least one trial or the deterministic fallback".into(),
        ));
    }
    Ok(best.map(|(q, s_prime)| AuxSolution {
        s_prime,
        q,
        case_used: AuxCase::LpRounding,
    }))
}

/// Case chosen by the thresholds: exhaustive over `2^β` when
/// `β ≤ 3R ln(3n)/ε₂²`, else exhaustive over placements when
/// `k' ≤ 3R² ln 6/ε₂²`, else LP rounding.
pub fn select_case(aux: &AuxProblem, params: &PtasParams) -> AuxCase {
    if let Some(case) = params.force_case {
        return case;
    }
    let n = aux.star_ballots().len();
    if aux.beta() as f64 <= case1_threshold(params.r, n, params.epsilon2) {
        AuxCase::ExhaustiveBeta
    } else if aux.k_star() as f64 <= params.case2_threshold {
        AuxCase::ExhaustiveK
    } else {
        AuxCase::LpRounding
    }
}

pub fn solve_aux(aux: &AuxProblem, params: &PtasParams) -> Result<Option<AuxSolution>> {
    match select_case(aux, params) {
        AuxCase::ExhaustiveBeta => solve_aux_case1(aux, params),
        AuxCase::ExhaustiveK => solve_aux_case2(aux, params),
        AuxCase::LpRounding => solve_aux_case3(aux, params),
    }
}
