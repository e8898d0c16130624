//! Machine-readable run records, one JSON object per line.
//!
//! `RunReport` fields: `algorithm`, `committee` (bit string), `objective`,
//! `opt` and `ratio` (null unless the exact oracle ran), `epsilon` and
//! `seed` (approximation scheme only), `elapsed_ms` (null unless timing was
//! requested, so records stay reproducible) and `diagnostics` (approximation
//! scheme only).

use std::fmt::Write as _;

use mav_core::ptas::{AuxCase, SolveReport};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseCounts {
    pub exhaustive_beta: u64,
    pub exhaustive_k: u64,
    pub lp_rounding: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsRecord {
    pub subset_size: usize,
    pub trials: usize,
    pub subsets_examined: u64,
    pub splits_considered: u64,
    pub skipped_no_star_completion: u64,
    pub skipped_star_part_too_small: u64,
    pub candidates_evaluated: u64,
    pub case_counts: CaseCounts,
}

impl From<&SolveReport> for DiagnosticsRecord {
    fn from(r: &SolveReport) -> Self {
        let d = &r.diagnostics;
        DiagnosticsRecord {
            subset_size: r.params.r,
            trials: r.params.trials,
            subsets_examined: d.subsets_examined,
            splits_considered: d.splits_considered,
            skipped_no_star_completion: d.skipped_no_star_completion,
            skipped_star_part_too_small: d.skipped_star_part_too_small,
            candidates_evaluated: d.candidates_evaluated,
            case_counts: CaseCounts {
                exhaustive_beta: d.case_count(AuxCase::ExhaustiveBeta),
                exhaustive_k: d.case_count(AuxCase::ExhaustiveK),
                lp_rounding: d.case_count(AuxCase::LpRounding),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub algorithm: String,
    pub committee: String,
    pub objective: usize,
    pub opt: Option<usize>,
    pub ratio: Option<f64>,
    pub epsilon: Option<f64>,
    pub seed: Option<u64>,
    pub elapsed_ms: Option<f64>,
    pub diagnostics: Option<DiagnosticsRecord>,
}

/// `objective / opt`; 1 when both are zero, absent when only `opt` is.
pub fn ratio(objective: usize, opt: usize) -> Option<f64> {
    match (objective, opt) {
        (0, 0) => Some(1.0),
        (_, 0) => None,
        (v, o) => Some(v as f64 / o as f64),
    }
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "algorithm  {}", self.algorithm).unwrap();
        writeln!(out, "committee  {}", self.committee).unwrap();
        writeln!(out, "objective  {}", self.objective).unwrap();
        if let Some(opt) = self.opt {
            writeln!(out, "opt        {opt}").unwrap();
        }
        if let Some(r) = self.ratio {
            writeln!(out, "ratio      {r:.4}").unwrap();
        }
        if let Some(eps) = self.epsilon {
            writeln!(out, "epsilon    {eps}").unwrap();
        }
        if let Some(seed) = self.seed {
            writeln!(out, "seed       {seed}").unwrap();
        }
        if let Some(ms) = self.elapsed_ms {
            writeln!(out, "elapsed    {ms:.3} ms").unwrap();
        }
        if let Some(d) = &self.diagnostics {
            writeln!(
                out,
                "subsets    {} of size {}, {} splits, {} candidates",
                d.subsets_examined, d.subset_size, d.splits_considered, d.candidates_evaluated
            )
            .unwrap();
            writeln!(
                out,
                "cases      beta {} / k {} / lp {}",
                d.case_counts.exhaustive_beta, d.case_counts.exhaustive_k, d.case_counts.lp_rounding
            )
            .unwrap();
        }
        out
    }
}

/// Per-instance record emitted by `bench`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub record: String,
    pub instance: usize,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub instance_seed: u64,
    #[serde(flatten)]
    pub report: RunReport,
}

/// Closing row per algorithm. Ratios only count runs where the oracle ran.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRecord {
    pub record: String,
    pub algorithm: String,
    pub instances: usize,
    pub with_ratio: usize,
    pub max_ratio: Option<f64>,
    pub mean_ratio: Option<f64>,
}
