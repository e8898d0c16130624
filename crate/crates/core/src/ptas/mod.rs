//! Polynomial-time approximation scheme for minimax approval voting.
//!
//! For every size-`R` vote subset `Y` and every split `k = k' + k''`, the
//! consensus positions of `Y` are fixed to the `k''`-completion of its
//! pattern and the star positions are chosen by one of three auxiliary
//! solvers. The best committee over all pairs, scored with the true minimax
//! objective, is returned.

mod cases;
mod params;
mod solve;

pub use cases::{
    select_case, solve_aux, solve_aux_case1, solve_aux_case2, solve_aux_case3, trial_seed, AuxSolution,
};
pub use params::{
    case1_threshold, case2_threshold, derive_params, AuxCase, CaseLimits, PtasParams, DEFAULT_MAX_CASE1_BETA,
    DEFAULT_MAX_CASE2_PLACEMENTS, DEFAULT_TRIALS,
};
pub use solve::{
    for_each_candidate, ptas_solve, ptas_solve_with, subset_space, unrank_subset, Candidate, Diagnostics,
    SolveReport,
};
