//! Word-packed 0/1 strings.
//!
//! Position `j` lives in bit `j % 64` of word `j / 64`. Bits past `len` are
//! always zero, so popcounts over whole words are exact.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{MavError, Result};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(WORD)],
            len,
        }
    }

    pub fn ones_vec(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for w in &mut v.words {
            *w = !0;
        }
        v.clear_tail();
        v
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % WORD == 0 {
                words.push(0);
            }
            if b {
                words[len / WORD] |= 1 << (len % WORD);
            }
            len += 1;
        }
        Self { words, len }
    }

    /// Builds a vector of length `len` from the low `len` bits of `mask`
    /// (bit `j` of the mask is position `j`).
    pub fn from_mask(mask: u64, len: usize) -> Self {
        assert!(len <= WORD, "mask vectors hold at most 64 positions");
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = mask;
            v.clear_tail();
        }
        v
    }

    /// Low-word view; only meaningful for `len <= 64`.
    pub fn to_mask(&self) -> u64 {
        debug_assert!(self.len <= WORD);
        self.words.first().copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, j: usize) -> bool {
        assert!(j < self.len, "bit index {j} out of range {}", self.len);
        (self.words[j / WORD] >> (j % WORD)) & 1 == 1
    }

    pub fn set(&mut self, j: usize, value: bool) {
        assert!(j < self.len, "bit index {j} out of range {}", self.len);
        let mask = 1u64 << (j % WORD);
        if value {
            self.words[j / WORD] |= mask;
        } else {
            self.words[j / WORD] &= !mask;
        }
    }

    pub fn ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |j| self.get(j))
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let t = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + t)
            })
        })
    }

    /// Hamming distance. Panics on length mismatch; use [`hamming`] for a
    /// checked version.
    pub fn distance(&self, other: &Self) -> usize {
        assert_eq!(self.len, other.len, "hamming distance on unequal lengths");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// Positions `range.start..range.end` as a new vector.
    pub fn slice(&self, start: usize, end: usize) -> Self {
        assert!(start <= end && end <= self.len);
        Self::from_bools((start..end).map(|j| self.get(j)))
    }

    pub fn concat(&self, tail: &Self) -> Self {
        Self::from_bools(self.iter().chain(tail.iter()))
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

/// Lexicographic order of the 0/1 strings, position 0 first, `0 < 1`.
impl Ord for BitVector {
    fn cmp(&self, other: &Self) -> Ordering {
        let shared = self.words.len().min(other.words.len());
        for i in 0..shared {
            let (a, b) = (self.words[i], other.words[i]);
            let diff = a ^ b;
            if diff != 0 {
                let pos = i * WORD + diff.trailing_zeros() as usize;
                if pos < self.len.min(other.len) {
                    return if (a >> diff.trailing_zeros()) & 1 == 0 {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    };
                }
                break;
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for BitVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = MavError;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(MavError::InvalidParameter(format!(
                    "illegal bit character {other:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::from_bools)
    }
}

/// Number of positions where `x` and `y` differ.
pub fn hamming(x: &BitVector, y: &BitVector) -> Result<usize> {
    if x.len() != y.len() {
        return Err(MavError::LengthMismatch {
            expected: x.len(),
            actual: y.len(),
        });
    }
    Ok(x.distance(y))
}

/// Nearest vector with exactly `k` ones: adds ones at the smallest-index
/// zeros, or removes the smallest-index ones, whichever direction is needed.
pub fn k_completion(x: &BitVector, k: usize) -> Result<BitVector> {
    if k > x.len() {
        return Err(MavError::InvalidCommitteeSize { k, m: x.len() });
    }
    let ones = x.ones();
    let mut out = x.clone();
    if ones < k {
        let zeros: Vec<usize> = (0..x.len()).filter(|&j| !x.get(j)).take(k - ones).collect();
        for j in zeros {
            out.set(j, true);
        }
    } else if ones > k {
        let drop: Vec<usize> = x.iter_ones().take(ones - k).collect();
        for j in drop {
            out.set(j, false);
        }
    }
    Ok(out)
}

/// Lexicographic rank of an `m`-position mask: position 0 becomes the most
/// significant bit, so numeric order equals string order.
pub(crate) fn lex_key(mask: u64, m: usize) -> u64 {
    if m == 0 {
        0
    } else {
        mask.reverse_bits() >> (64 - m)
    }
}

/// All `m`-bit masks with exactly `k` ones, ascending (Gosper's hack).
pub(crate) fn masks_with_ones(m: usize, k: usize) -> Vec<u64> {
    if k == 0 {
        return vec![0];
    }
    let limit = 1u64 << m;
    let mut out = Vec::new();
    let mut x = (1u64 << k) - 1;
    while x < limit {
        out.push(x);
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}
