//! Consensus patterns of vote subsets and the candidate reordering that
//! moves disagreement positions to the front.

use std::fmt;

use crate::bits::BitVector;
use crate::error::{MavError, Result};

/// Pattern symbol. The derived order `Star < Zero < One` is the order used
/// when sorting a pattern into star / zero / one blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Star,
    Zero,
    One,
}

impl Symbol {
    pub fn as_char(self) -> char {
        match self {
            Symbol::Star => '*',
            Symbol::Zero => '0',
            Symbol::One => '1',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    symbols: Vec<Symbol>,
    star_count: usize,
}

impl Pattern {
    pub fn from_symbols(symbols: Vec<Symbol>) -> Self {
        let star_count = symbols.iter().filter(|&&s| s == Symbol::Star).count();
        Self {
            symbols,
            star_count,
        }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Number of `*` positions (β).
    pub fn star_count(&self) -> usize {
        self.star_count
    }

    pub fn is_star(&self, j: usize) -> bool {
        self.symbols[j] == Symbol::Star
    }

    /// Positions holding `*`, ascending.
    pub fn star_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.symbols
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == Symbol::Star)
            .map(|(j, _)| j)
    }

    /// Non-star symbols in order, as a bit vector.
    pub fn consensus_bits(&self) -> BitVector {
        BitVector::from_bools(
            self.symbols
                .iter()
                .filter(|&&s| s != Symbol::Star)
                .map(|&s| s == Symbol::One),
        )
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Pattern {
    type Err = MavError;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .chars()
            .map(|c| match c {
                '*' => Ok(Symbol::Star),
                '0' => Ok(Symbol::Zero),
                '1' => Ok(Symbol::One),
                other => Err(MavError::InvalidParameter(format!(
                    "illegal pattern character {other:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_symbols(symbols))
    }
}

/// Per-position consensus of a nonempty vote subset: `0`/`1` where all votes
/// agree, `*` elsewhere.
pub fn pattern<'a, I>(votes: I) -> Result<Pattern>
where
    I: IntoIterator<Item = &'a BitVector>,
{
    let mut iter = votes.into_iter();
    let first = iter.next().ok_or(MavError::EmptySubset)?;
    let m = first.len();
    let mut all_one = first.clone();
    let mut any_one = first.clone();
    for v in iter {
        if v.len() != m {
            return Err(MavError::LengthMismatch {
                expected: m,
                actual: v.len(),
            });
        }
        for j in 0..m {
            let b = v.get(j);
            if !b {
                all_one.set(j, false);
            } else {
                any_one.set(j, true);
            }
        }
    }
    let symbols = (0..m)
        .map(|j| match (all_one.get(j), any_one.get(j)) {
            (true, _) => Symbol::One,
            (false, false) => Symbol::Zero,
            (false, true) => Symbol::Star,
        })
        .collect();
    Ok(Pattern::from_symbols(symbols))
}

/// A bijection on candidate positions.
///
/// `forward[old] = new`, `inverse[new] = old`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    forward: Vec<usize>,
    inverse: Vec<usize>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Self {
            forward: (0..m).collect(),
            inverse: (0..m).collect(),
        }
    }

    /// Builds the permutation whose new position `i` takes old position
    /// `order[i]`.
    pub fn from_order(order: Vec<usize>) -> Result<Self> {
        let m = order.len();
        let mut forward = vec![usize::MAX; m];
        for (new, &old) in order.iter().enumerate() {
            if old >= m || forward[old] != usize::MAX {
                return Err(MavError::InvalidParameter(format!(
                    "{order:?} is not a permutation"
                )));
            }
            forward[old] = new;
        }
        Ok(Self {
            forward,
            inverse: order,
        })
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn forward(&self) -> &[usize] {
        &self.forward
    }

    /// New-to-old map, i.e. the reading order.
    pub fn order(&self) -> &[usize] {
        &self.inverse
    }

    pub fn inverse(&self) -> Permutation {
        Permutation {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
        }
    }
}

/// Moves every position `old` of `x` to `perm.forward()[old]`.
pub fn apply_permutation(x: &BitVector, perm: &Permutation) -> Result<BitVector> {
    if x.len() != perm.len() {
        return Err(MavError::LengthMismatch {
            expected: perm.len(),
            actual: x.len(),
        });
    }
    Ok(BitVector::from_bools(perm.order().iter().map(|&old| x.get(old))))
}

/// Stable reordering that puts all `*` positions first, then the `0`
/// positions, then the `1` positions. Returns the permutation and the
/// reordered pattern.
pub fn star_permutation(p: &Pattern) -> (Permutation, Pattern) {
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&j| p.symbols[j]);
    let reordered = Pattern::from_symbols(order.iter().map(|&j| p.symbols[j]).collect());
    let perm = Permutation::from_order(order).expect("sorted indices form a permutation");
    (perm, reordered)
}
