use std::fmt;
use std::str::FromStr;

use crate::error::{MavError, Result};

/// Default number of independent rounding trials in the LP case.
pub const DEFAULT_TRIALS: usize = 64;
/// Default cap on `β` for the `2^β` enumeration.
pub const DEFAULT_MAX_CASE1_BETA: usize = 24;
/// Default cap on `C(β, k')` for the placement enumeration.
pub const DEFAULT_MAX_CASE2_PLACEMENTS: u64 = 1 << 24;

/// Which of the three auxiliary solvers handled a `(Y, k')` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AuxCase {
    /// All `2^β` assignments of the star part.
    ExhaustiveBeta,
    /// All placements of `k'` ones among `β` positions.
    ExhaustiveK,
    /// LP relaxation plus randomized rounding.
    LpRounding,
}

impl AuxCase {
    pub const ALL: [AuxCase; 3] = [AuxCase::ExhaustiveBeta, AuxCase::ExhaustiveK, AuxCase::LpRounding];

    pub fn index(self) -> usize {
        match self {
            AuxCase::ExhaustiveBeta => 0,
            AuxCase::ExhaustiveK => 1,
            AuxCase::LpRounding => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AuxCase::ExhaustiveBeta => "exhaustive_beta",
            AuxCase::ExhaustiveK => "exhaustive_k",
            AuxCase::LpRounding => "lp_rounding",
        }
    }
}

impl fmt::Display for AuxCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AuxCase {
    type Err = MavError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" | "exhaustive_beta" => Ok(AuxCase::ExhaustiveBeta),
            "2" | "exhaustive_k" => Ok(AuxCase::ExhaustiveK),
            "3" | "lp_rounding" => Ok(AuxCase::LpRounding),
            other => Err(MavError::InvalidParameter(format!("unknown case {other:?}"))),
        }
    }
}

/// Enumeration caps for the exhaustive cases. Exceeding one is an error,
/// never a silent fallback.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CaseLimits {
    pub max_case1_beta: usize,
    pub max_case2_placements: u64,
}

impl Default for CaseLimits {
    fn default() -> Self {
        Self {
            max_case1_beta: DEFAULT_MAX_CASE1_BETA,
            max_case2_placements: DEFAULT_MAX_CASE2_PLACEMENTS,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PtasParams {
    /// Target slack: the result is within `1 + epsilon` of optimal.
    pub epsilon: f64,
    /// `epsilon / 3`.
    pub epsilon0: f64,
    /// Subset size `⌈2 / epsilon0⌉`.
    pub r: usize,
    /// `epsilon0 / 2`, the auxiliary solver's slack.
    pub epsilon2: f64,
    /// Ballot count the case-1 threshold was evaluated for.
    pub n: usize,
    /// `3 R ln(3n) / epsilon2²`.
    pub case1_threshold: f64,
    /// `3 R² ln 6 / epsilon2²`.
    pub case2_threshold: f64,
    pub trials: usize,
    /// Also try the rounding that keeps the `k'` largest LP coordinates.
    pub deterministic_fallback: bool,
    pub seed: u64,
    pub force_case: Option<AuxCase>,
    pub limits: CaseLimits,
    /// Spread the subset enumeration over the rayon pool.
    pub parallel: bool,
}

/// `⌈x⌉`, treating values within floating-point noise of an integer as that
/// integer (so `2 / (0.6 / 3)` gives 10, not 11).
fn ceil_tolerant(x: f64) -> f64 {
    let nearest = x.round();
    if (x - nearest).abs() <= 1e-9 * x.abs().max(1.0) {
        nearest
    } else {
        x.ceil()
    }
}

pub fn case1_threshold(r: usize, n: usize, epsilon2: f64) -> f64 {
    3.0 * r as f64 * (3.0 * n as f64).ln() / (epsilon2 * epsilon2)
}

pub fn case2_threshold(r: usize, epsilon2: f64) -> f64 {
    let r = r as f64;
    3.0 * r * r * 6f64.ln() / (epsilon2 * epsilon2)
}

pub fn derive_params(epsilon: f64, n: usize, seed: u64) -> Result<PtasParams> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(MavError::InvalidEpsilon(epsilon));
    }
    let epsilon0 = epsilon / 3.0;
    let r = ceil_tolerant(2.0 / epsilon0) as usize;
    let epsilon2 = epsilon0 / 2.0;
    if !(epsilon2 > 0.0 && epsilon2 < 0.5) || r == 0 {
        return Err(MavError::InvalidEpsilon(epsilon));
    }
    Ok(PtasParams {
        epsilon,
        epsilon0,
        r,
        epsilon2,
        n,
        case1_threshold: case1_threshold(r, n, epsilon2),
        case2_threshold: case2_threshold(r, epsilon2),
        trials: DEFAULT_TRIALS,
        deterministic_fallback: true,
        seed,
        force_case: None,
        limits: CaseLimits::default(),
        parallel: true,
    })
}
