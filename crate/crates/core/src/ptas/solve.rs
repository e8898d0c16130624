use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::cases::solve_aux;
use super::params::{derive_params, AuxCase, PtasParams};
use crate::auxiliary::{AuxBuild, SkipReason, SubsetDecomposition};
use crate::bits::BitVector;
use crate::election::{Committee, Election};
use crate::error::{MavError, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diagnostics {
    pub subsets_examined: u64,
    pub splits_considered: u64,
    pub skipped_no_star_completion: u64,
    pub skipped_star_part_too_small: u64,
    /// Indexed by [`AuxCase::index`].
    pub case_counts: [u64; 3],
    pub candidates_evaluated: u64,
    pub elapsed: Duration,
}

impl Diagnostics {
    fn merge(mut self, other: &Diagnostics) -> Self {
        self.subsets_examined += other.subsets_examined;
        self.splits_considered += other.splits_considered;
        self.skipped_no_star_completion += other.skipped_no_star_completion;
        self.skipped_star_part_too_small += other.skipped_star_part_too_small;
        for (a, b) in self.case_counts.iter_mut().zip(other.case_counts) {
            *a += b;
        }
        self.candidates_evaluated += other.candidates_evaluated;
        self
    }

    pub fn case_count(&self, case: AuxCase) -> u64 {
        self.case_counts[case.index()]
    }

    pub fn skipped(&self, reason: SkipReason) -> u64 {
        match reason {
            SkipReason::NoStarCompletionImpossible => self.skipped_no_star_completion,
            SkipReason::StarPartTooSmall => self.skipped_star_part_too_small,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub committee: Committee,
    pub objective: usize,
    pub params: PtasParams,
    pub diagnostics: Diagnostics,
}

/// One evaluated `(Y, k')` pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub subset_rank: u64,
    pub subset: Vec<usize>,
    pub k_star: usize,
    pub committee: BitVector,
    pub objective: usize,
    pub case_used: AuxCase,
}

fn binomial_u64(n: usize, k: usize) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// The `rank`-th `size`-subset of `0..n` in lexicographic order.
pub fn unrank_subset(n: usize, size: usize, mut rank: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(size);
    let mut next = 0;
    for slot in 0..size {
        let remaining = size - slot - 1;
        loop {
            let count = binomial_u64(n - next - 1, remaining).expect("rank within total");
            if rank < count {
                break;
            }
            rank -= count;
            next += 1;
        }
        out.push(next);
        next += 1;
    }
    out
}

/// Number of subsets the main loop visits, and their size.
pub fn subset_space(n: usize, r: usize) -> Result<(usize, u64)> {
    let size = r.min(n);
    let count = binomial_u64(n, size).ok_or(MavError::BudgetExceeded {
        what: "vote subsets",
        needed: u64::MAX,
        limit: u64::MAX,
    })?;
    Ok((size, count))
}

fn process_subset(
    election: &Election,
    params: &PtasParams,
    rank: u64,
    subset: Vec<usize>,
) -> Result<(Vec<Candidate>, Diagnostics)> {
    let mut diag = Diagnostics {
        subsets_examined: 1,
        ..Diagnostics::default()
    };
    let decomposition = SubsetDecomposition::new(election, &subset)?;
    let mut out = Vec::new();
    for k_star in 0..=election.k() {
        diag.splits_considered += 1;
        let aux = match decomposition.aux(k_star)? {
            AuxBuild::Ready(aux) => aux,
            AuxBuild::Skipped(SkipReason::NoStarCompletionImpossible) => {
                diag.skipped_no_star_completion += 1;
                continue;
            }
            AuxBuild::Skipped(SkipReason::StarPartTooSmall) => {
                diag.skipped_star_part_too_small += 1;
                continue;
            }
        };
        let Some(sol) = solve_aux(&aux, params)? else {
            diag.skipped_star_part_too_small += 1;
            continue;
        };
        diag.case_counts[sol.case_used.index()] += 1;
        let committee = aux.assemble(&sol.s_prime);
        let objective = election.max_distance(&committee)?;
        diag.candidates_evaluated += 1;
        out.push(Candidate {
            subset_rank: rank,
            subset: subset.clone(),
            k_star,
            committee,
            objective,
            case_used: sol.case_used,
        });
    }
    Ok((out, diag))
}

/// Visits every candidate in enumeration order (subsets lexicographically,
/// `k'` ascending). Runs serially. `election` must already satisfy `n > k`.
pub fn for_each_candidate<F>(election: &Election, params: &PtasParams, mut visit: F) -> Result<Diagnostics>
where
    F: FnMut(&Candidate),
{
    let (size, count) = subset_space(election.n(), params.r)?;
    let mut total = Diagnostics::default();
    for rank in 0..count {
        let (candidates, diag) = process_subset(election, params, rank, unrank_subset(election.n(), size, rank))?;
        candidates.iter().for_each(&mut visit);
        total = total.merge(&diag);
    }
    Ok(total)
}

type Best = Option<(usize, BitVector)>;

fn better(a: Best, b: Best) -> Best {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => Some(if (a.0, &a.1) <= (b.0, &b.1) { a } else { b }),
    }
}

fn best_of(candidates: &[Candidate]) -> Best {
    candidates
        .iter()
        .map(|c| Some((c.objective, c.committee.clone())))
        .fold(None, better)
}

/// Runs the approximation scheme with fully specified parameters. The
/// election is padded to `n > k` first.
pub fn ptas_solve_with(election: &Election, params: &PtasParams) -> Result<SolveReport> {
    let start = Instant::now();
    let election = election.normalized();
    let (size, count) = subset_space(election.n(), params.r)?;
    let n = election.n();

    let task = |rank: u64| -> std::result::Result<(Best, Diagnostics), (u64, MavError)> {
        process_subset(&election, params, rank, unrank_subset(n, size, rank))
            .map(|(c, d)| (best_of(&c), d))
            .map_err(|e| (rank, e))
    };
    type Partial = std::result::Result<(Best, Diagnostics), (u64, MavError)>;
    let combine = |a: Partial, b: Partial| -> Partial {
        match (a, b) {
            (Err(ea), Err(eb)) => Err(if ea.0 <= eb.0 { ea } else { eb }),
            (Err(e), _) | (_, Err(e)) => Err(e),
            (Ok((ba, da)), Ok((bb, db))) => Ok((better(ba, bb), da.merge(&db))),
        }
    };
    let identity = || -> Partial { Ok((None, Diagnostics::default())) };

    let reduced = if params.parallel {
        (0..count).into_par_iter().map(task).reduce(identity, combine)
    } else {
        (0..count).map(task).fold(identity(), combine)
    };
    let (best, mut diagnostics) = reduced.map_err(|(_, e)| e)?;
    let (objective, vector) = best.ok_or_else(|| {
        MavError::InvalidParameter("no feasible (subset, split) pair was found".into())
    })?;
    diagnostics.elapsed = start.elapsed();
    Ok(SolveReport {
        committee: Committee::new(vector, election.k())?,
        objective,
        params: params.clone(),
        diagnostics,
    })
}

/// Committee within `1 + epsilon` of the minimax optimum, with default
/// rounding settings.
pub fn ptas_solve(election: &Election, epsilon: f64, seed: u64) -> Result<SolveReport> {
    let params = derive_params(epsilon, election.normalized().n(), seed)?;
    ptas_solve_with(election, &params)
}
