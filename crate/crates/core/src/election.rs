use std::borrow::Cow;

use crate::bits::BitVector;
use crate::error::{MavError, Result};

/// A multiset of approval ballots over `m` candidates with committee size `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Election {
    ballots: Vec<BitVector>,
    m: usize,
    k: usize,
}

impl Election {
    pub fn new(ballots: Vec<BitVector>, k: usize) -> Result<Self> {
        let first = ballots.first().ok_or(MavError::NoBallots)?;
        let m = first.len();
        if let Some(bad) = ballots.iter().find(|b| b.len() != m) {
            return Err(MavError::LengthMismatch {
                expected: m,
                actual: bad.len(),
            });
        }
        if k > m {
            return Err(MavError::InvalidCommitteeSize { k, m });
        }
        Ok(Self { ballots, m, k })
    }

    /// Convenience constructor from `"0101"`-style strings.
    pub fn from_strs(ballots: &[&str], k: usize) -> Result<Self> {
        let parsed = ballots
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<BitVector>>>()?;
        Self::new(parsed, k)
    }

    pub fn ballots(&self) -> &[BitVector] {
        &self.ballots
    }

    pub fn n(&self) -> usize {
        self.ballots.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Ensures `n > k` by repeating the first ballot `k - n + 1` times.
    /// The minimax objective of every committee is unchanged.
    pub fn normalized(&self) -> Cow<'_, Election> {
        if self.n() > self.k {
            return Cow::Borrowed(self);
        }
        let mut ballots = self.ballots.clone();
        let first = ballots[0].clone();
        ballots.extend(std::iter::repeat_n(first, self.k - self.n() + 1));
        Cow::Owned(Election {
            ballots,
            m: self.m,
            k: self.k,
        })
    }

    /// Maximum Hamming distance from `x` to any ballot.
    pub fn max_distance(&self, x: &BitVector) -> Result<usize> {
        if x.len() != self.m {
            return Err(MavError::LengthMismatch {
                expected: self.m,
                actual: x.len(),
            });
        }
        Ok(self.ballots.iter().map(|b| b.distance(x)).max().unwrap_or(0))
    }

    /// Sum of Hamming distances from `x` to all ballots.
    pub fn total_distance(&self, x: &BitVector) -> Result<usize> {
        if x.len() != self.m {
            return Err(MavError::LengthMismatch {
                expected: self.m,
                actual: x.len(),
            });
        }
        Ok(self.ballots.iter().map(|b| b.distance(x)).sum())
    }

    /// Per-candidate approval counts.
    pub fn approvals(&self) -> Vec<usize> {
        let mut counts = vec![0; self.m];
        for b in &self.ballots {
            for j in b.iter_ones() {
                counts[j] += 1;
            }
        }
        counts
    }
}

/// A bit vector with exactly `k` ones.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Committee(BitVector);

impl Committee {
    pub fn new(vector: BitVector, k: usize) -> Result<Self> {
        if vector.ones() != k {
            return Err(MavError::InvalidParameter(format!(
                "committee {vector} has {} members, expected {k}",
                vector.ones()
            )));
        }
        Ok(Self(vector))
    }

    pub fn vector(&self) -> &BitVector {
        &self.0
    }

    pub fn into_vector(self) -> BitVector {
        self.0
    }

    pub fn size(&self) -> usize {
        self.0.ones()
    }

    pub fn members(&self) -> Vec<usize> {
        self.0.iter_ones().collect()
    }
}

impl std::fmt::Display for Committee {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Minimax objective: the largest Hamming distance between the committee and
/// any ballot.
pub fn objective(committee: &Committee, election: &Election) -> Result<usize> {
    if election.n() == 0 {
        return Err(MavError::NoBallots);
    }
    election.max_distance(committee.vector())
}
