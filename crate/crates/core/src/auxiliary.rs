//! The auxiliary problem over the star part of a vote subset.
//!
//! For a subset `Y` the candidates are reordered so that `pattern(Y)` reads
//! `*…*0…01…1`. The no-star part of the committee is fixed to the
//! `k''`-completion of the pattern's consensus bits, and what remains is an
//! integer program over the `β` star positions:
//!
//! ```text
//! min q   s.t.  ones(s') = k',   d(s', s_i') + offset_i <= q  for all i,   s' ∈ {0,1}^β
//! ```
//!
//! where `offset_i = d(s_alg'', s_i'')`.

use std::fmt;

use crate::bits::{k_completion, BitVector};
use crate::election::Election;
use crate::error::{MavError, Result};
use crate::pattern::{apply_permutation, pattern, star_permutation, Pattern, Permutation};

/// Why a `(Y, k')` pair produced no auxiliary problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SkipReason {
    /// `k''` exceeds the number of no-star positions.
    NoStarCompletionImpossible,
    /// `k'` exceeds `β`; the relaxation is infeasible.
    StarPartTooSmall,
}

impl SkipReason {
    pub fn as_str(self) -> &'static str {
        match self {
            SkipReason::NoStarCompletionImpossible => "no_star_completion_impossible",
            SkipReason::StarPartTooSmall => "star_part_too_small",
        }
    }
}

impl fmt::Display for SkipReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxProblem {
    subset: Vec<usize>,
    perm: Permutation,
    star_ballots: Vec<BitVector>,
    nostar_ballots: Vec<BitVector>,
    k_star: usize,
    k_nostar: usize,
    nostar_completion: BitVector,
    offsets: Vec<usize>,
}

impl AuxProblem {
    /// A standalone instance with no no-star part: identity ordering and the
    /// given offsets. Used to exercise the star-part solvers directly.
    pub fn synthetic(star_ballots: Vec<BitVector>, offsets: Vec<usize>, k_star: usize) -> Result<Self> {
        let beta = star_ballots.first().ok_or(MavError::NoBallots)?.len();
        if let Some(b) = star_ballots.iter().find(|b| b.len() != beta) {
            return Err(MavError::LengthMismatch {
                expected: beta,
                actual: b.len(),
            });
        }
        if offsets.len() != star_ballots.len() {
            return Err(MavError::LengthMismatch {
                expected: star_ballots.len(),
                actual: offsets.len(),
            });
        }
        let n = star_ballots.len();
        Ok(Self {
            subset: Vec::new(),
            perm: Permutation::identity(beta),
            star_ballots,
            nostar_ballots: vec![BitVector::zeros(0); n],
            k_star,
            k_nostar: 0,
            nostar_completion: BitVector::zeros(0),
            offsets,
        })
    }

    /// Ballot indices of `Y`.
    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    /// Number of star positions (β).
    pub fn beta(&self) -> usize {
        self.perm.len() - self.nostar_completion.len()
    }

    pub fn star_ballots(&self) -> &[BitVector] {
        &self.star_ballots
    }

    pub fn nostar_ballots(&self) -> &[BitVector] {
        &self.nostar_ballots
    }

    /// Ones required in the star part (k').
    pub fn k_star(&self) -> usize {
        self.k_star
    }

    /// Ones in the fixed no-star part (k'').
    pub fn k_nostar(&self) -> usize {
        self.k_nostar
    }

    pub fn nostar_completion(&self) -> &BitVector {
        &self.nostar_completion
    }

    /// `d(s_alg'', s_i'')` per ballot.
    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// `max_i d(s', s_i') + offset_i`.
    pub fn value_of(&self, star: &BitVector) -> usize {
        self.star_ballots
            .iter()
            .zip(&self.offsets)
            .map(|(b, &o)| b.distance(star) + o)
            .max()
            .unwrap_or(0)
    }

    /// Full committee in the original candidate order: `s' · s_alg''`
    /// mapped back through the inverse reordering.
    pub fn assemble(&self, star: &BitVector) -> BitVector {
        let permuted = star.concat(&self.nostar_completion);
        apply_permutation(&permuted, &self.perm.inverse()).expect("lengths agree by construction")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AuxBuild {
    Ready(Box<AuxProblem>),
    Skipped(SkipReason),
}

impl AuxBuild {
    pub fn ready(self) -> Option<AuxProblem> {
        match self {
            AuxBuild::Ready(aux) => Some(*aux),
            AuxBuild::Skipped(_) => None,
        }
    }
}

/// Everything about a subset `Y` that does not depend on the split of `k`.
#[derive(Debug, Clone)]
pub struct SubsetDecomposition {
    subset: Vec<usize>,
    pattern: Pattern,
    perm: Permutation,
    consensus: BitVector,
    star_ballots: Vec<BitVector>,
    nostar_ballots: Vec<BitVector>,
    k: usize,
}

impl SubsetDecomposition {
    pub fn new(election: &Election, subset: &[usize]) -> Result<Self> {
        let n = election.n();
        if let Some(&index) = subset.iter().find(|&&i| i >= n) {
            return Err(MavError::BallotIndex { index, n });
        }
        let p = pattern(subset.iter().map(|&i| &election.ballots()[i]))?;
        let (perm, sorted) = star_permutation(&p);
        let beta = p.star_count();
        let m = election.m();
        let mut star_ballots = Vec::with_capacity(n);
        let mut nostar_ballots = Vec::with_capacity(n);
        for b in election.ballots() {
            let permuted = apply_permutation(b, &perm)?;
            star_ballots.push(permuted.slice(0, beta));
            nostar_ballots.push(permuted.slice(beta, m));
        }
        Ok(Self {
            subset: subset.to_vec(),
            consensus: sorted.consensus_bits(),
            pattern: p,
            perm,
            star_ballots,
            nostar_ballots,
            k: election.k(),
        })
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn beta(&self) -> usize {
        self.pattern.star_count()
    }

    /// Auxiliary problem for the split `k = k' + k''`.
    pub fn aux(&self, k_star: usize) -> Result<AuxBuild> {
        if k_star > self.k {
            return Err(MavError::InvalidParameter(format!(
                "k' = {k_star} exceeds k = {}",
                self.k
            )));
        }
        let k_nostar = self.k - k_star;
        if k_nostar > self.consensus.len() {
            return Ok(AuxBuild::Skipped(SkipReason::NoStarCompletionImpossible));
        }
        if k_star > self.beta() {
            return Ok(AuxBuild::Skipped(SkipReason::StarPartTooSmall));
        }
        let nostar_completion = k_completion(&self.consensus, k_nostar)?;
        let offsets = self
            .nostar_ballots
            .iter()
            .map(|b| b.distance(&nostar_completion))
            .collect();
        Ok(AuxBuild::Ready(Box::new(AuxProblem {
            subset: self.subset.clone(),
            perm: self.perm.clone(),
            star_ballots: self.star_ballots.clone(),
            nostar_ballots: self.nostar_ballots.clone(),
            k_star,
            k_nostar,
            nostar_completion,
            offsets,
        })))
    }
}

/// Builds the auxiliary problem for subset `Y` (ballot indices) and `k'`, or
/// reports why the pair is skipped.
pub fn build_aux(election: &Election, subset: &[usize], k_star: usize) -> Result<AuxBuild> {
    SubsetDecomposition::new(election, subset)?.aux(k_star)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    #[test]
    fn full_star_subset() {
        let e = Election::from_strs(&["10", "01"], 1).unwrap();
        let aux = build_aux(&e, &[0, 1], 1).unwrap().ready().unwrap();
        assert_eq!(aux.beta(), 2);
        assert_eq!(aux.k_star(), 1);
        assert_eq!(aux.k_nostar(), 0);
        assert!(aux.nostar_completion().is_empty());
        assert_eq!(aux.offsets(), &[0, 0]);
        assert_eq!(aux.star_ballots(), &[bv("10"), bv("01")]);
    }

    #[test]
    fn no_star_subset() {
        let e = Election::from_strs(&["1100", "0011", "1010"], 2).unwrap();
        let aux = build_aux(&e, &[0], 0).unwrap().ready().unwrap();
        assert_eq!(aux.beta(), 0);
        // consensus 1100 reordered to 0011; completion keeps 2 ones
        assert_eq!(aux.assemble(&BitVector::zeros(0)), bv("1100"));
        assert_eq!(aux.offsets(), &[0, 4, 2]);
        assert_eq!(aux.value_of(&BitVector::zeros(0)), 4);
    }

    #[test]
    fn skips() {
        // pattern of {1000, 0110} is ***0, beta 3, no-star part has one slot
        let e = Election::from_strs(&["1000", "0110", "0000"], 2).unwrap();
        assert_eq!(
            build_aux(&e, &[0, 1], 0).unwrap(),
            AuxBuild::Skipped(SkipReason::NoStarCompletionImpossible)
        );
        // pattern of {1100} has no stars, so any k' > 0 is infeasible
        let e = Election::from_strs(&["1100", "0011", "0101"], 2).unwrap();
        assert_eq!(
            build_aux(&e, &[0], 1).unwrap(),
            AuxBuild::Skipped(SkipReason::StarPartTooSmall)
        );
        assert!(build_aux(&e, &[0], 3).is_err());
        assert!(build_aux(&e, &[], 0).is_err());
        assert!(build_aux(&e, &[7], 0).is_err());
    }

    #[test]
    fn assemble_inverts_reordering() {
        let e = Election::from_strs(&["1010", "1001", "0000"], 2).unwrap();
        // pattern 10** -> order [2,3,1,0]
        let aux = build_aux(&e, &[0, 1], 1).unwrap().ready().unwrap();
        assert_eq!(aux.beta(), 2);
        assert_eq!(aux.nostar_completion(), &bv("01"));
        assert_eq!(aux.assemble(&bv("10")), bv("1010"));
        assert_eq!(aux.assemble(&bv("01")), bv("1001"));
        for s in ["10", "01"] {
            let full = aux.assemble(&bv(s));
            assert_eq!(aux.value_of(&bv(s)), e.max_distance(&full).unwrap());
        }
    }
}
