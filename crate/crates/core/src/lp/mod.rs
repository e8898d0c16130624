//! Small dense linear programs and the relaxation of the auxiliary problem.

mod simplex;

use std::fmt::Write as _;

pub use simplex::solve_lp;

use crate::auxiliary::AuxProblem;
use crate::error::{MavError, Result};

/// Feasibility and optimality tolerance.
pub const TOLERANCE: f64 = 1e-9;

/// `min objective·x` subject to equality rows, `≤` rows and per-variable
/// bounds `lo ≤ x ≤ hi` (either side may be infinite).
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub equalities: Vec<(Vec<f64>, f64)>,
    pub inequalities: Vec<(Vec<f64>, f64)>,
    pub bounds: Vec<(f64, f64)>,
}

impl LinearProgram {
    /// New program with every variable bounded to `[0, ∞)`.
    pub fn new(objective: Vec<f64>) -> Self {
        let n = objective.len();
        Self {
            objective,
            equalities: Vec::new(),
            inequalities: Vec::new(),
            bounds: vec![(0.0, f64::INFINITY); n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_eq(&mut self, row: Vec<f64>, rhs: f64) -> &mut Self {
        self.equalities.push((row, rhs));
        self
    }

    pub fn add_le(&mut self, row: Vec<f64>, rhs: f64) -> &mut Self {
        self.inequalities.push((row, rhs));
        self
    }

    pub fn set_bounds(&mut self, var: usize, lo: f64, hi: f64) -> &mut Self {
        self.bounds[var] = (lo, hi);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        for (row, rhs) in self.equalities.iter().chain(&self.inequalities) {
            if row.len() != n {
                return Err(MavError::LengthMismatch {
                    expected: n,
                    actual: row.len(),
                });
            }
            if !rhs.is_finite() || row.iter().any(|a| !a.is_finite()) {
                return Err(MavError::InvalidParameter("non-finite LP coefficient".into()));
            }
        }
        if self.bounds.len() != n {
            return Err(MavError::LengthMismatch {
                expected: n,
                actual: self.bounds.len(),
            });
        }
        for (j, &(lo, hi)) in self.bounds.iter().enumerate() {
            if lo.is_nan() || hi.is_nan() || lo > hi || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
                return Err(MavError::InvalidParameter(format!("bad bounds [{lo}, {hi}] on x{j}")));
            }
        }
        if self.objective.iter().any(|c| !c.is_finite()) {
            return Err(MavError::InvalidParameter("non-finite objective".into()));
        }
        Ok(())
    }

    /// Largest violation of any row or bound at `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let dot = |row: &[f64]| row.iter().zip(x).map(|(a, b)| a * b).sum::<f64>();
        let eq = self.equalities.iter().map(|(r, b)| (dot(r) - b).abs());
        let le = self.inequalities.iter().map(|(r, b)| (dot(r) - b).max(0.0));
        let bounds = self
            .bounds
            .iter()
            .zip(x)
            .map(|(&(lo, hi), &v)| (lo - v).max(v - hi).max(0.0));
        eq.chain(le).chain(bounds).fold(0.0, f64::max)
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// Row-oriented text dump, one constraint per line.
    pub fn to_text(&self) -> String {
        fn row(out: &mut String, coeffs: &[f64]) {
            for (j, c) in coeffs.iter().enumerate() {
                if j > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{c}");
            }
        }
        let mut out = String::new();
        let _ = writeln!(out, "vars {}", self.num_vars());
        out.push_str("min ");
        row(&mut out, &self.objective);
        out.push('\n');
        for (r, b) in &self.equalities {
            out.push_str("eq ");
            row(&mut out, r);
            let _ = writeln!(out, " = {b}");
        }
        for (r, b) in &self.inequalities {
            out.push_str("le ");
            row(&mut out, r);
            let _ = writeln!(out, " <= {b}");
        }
        for (j, (lo, hi)) in self.bounds.iter().enumerate() {
            let _ = writeln!(out, "bound x{j} {lo} {hi}");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(&self) -> Option<&LpSolution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

/// Relaxation of the auxiliary program. Variables are `s'[0..β]` in `[0,1]`
/// followed by `q ≥ 0`. For ballot `i` with star part `b` the distance
/// `d(s', b) = ones(b) + Σ_{b_j=0} s'_j − Σ_{b_j=1} s'_j` is linear, giving
/// the row `Σ_{b_j=0} s'_j − Σ_{b_j=1} s'_j − q ≤ −offset_i − ones(b)`.
pub fn build_aux_lp(aux: &AuxProblem) -> LinearProgram {
    let beta = aux.beta();
    let mut objective = vec![0.0; beta + 1];
    objective[beta] = 1.0;
    let mut lp = LinearProgram::new(objective);
    for j in 0..beta {
        lp.set_bounds(j, 0.0, 1.0);
    }
    let mut sum = vec![1.0; beta + 1];
    sum[beta] = 0.0;
    lp.add_eq(sum, aux.k_star() as f64);
    for (ballot, &offset) in aux.star_ballots().iter().zip(aux.offsets()) {
        let mut row: Vec<f64> = ballot.iter().map(|b| if b { -1.0 } else { 1.0 }).collect();
        row.push(-1.0);
        lp.add_le(row, -(offset as f64) - ballot.ones() as f64);
    }
    lp
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::BitVector;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    #[test]
    fn aux_lp_shape() {
        let aux = AuxProblem::synthetic(vec![bv("10"), bv("01")], vec![0, 0], 1).unwrap();
        let lp = build_aux_lp(&aux);
        assert_eq!(lp.num_vars(), 3);
        assert_eq!(lp.equalities.len(), 1);
        assert_eq!(lp.inequalities.len(), 2);
        assert_eq!(lp.inequalities[0], (vec![-1.0, 1.0, -1.0], -1.0));
        assert!(lp.validate().is_ok());
        assert_eq!(lp.to_text().lines().count(), 2 + 1 + 2 + 3);
    }

    #[test]
    fn aux_lp_fractional_optimum() {
        let aux = AuxProblem::synthetic(vec![bv("10"), bv("01")], vec![0, 0], 1).unwrap();
        let lp = build_aux_lp(&aux);
        let sol = solve_lp(&lp).unwrap();
        let sol = sol.optimal().expect("feasible");
        assert!((sol.value - 1.0).abs() <= 1e-9);
        // every optimum has q = 1; the half-half point is one of them
        assert!(lp.max_violation(&[0.5, 0.5, 1.0]) <= 1e-12);
        assert!((lp.evaluate(&[0.5, 0.5, 1.0]) - 1.0).abs() <= 1e-12);
        assert!(lp.max_violation(&sol.x) <= 1e-9);
    }

    #[test]
    fn aux_lp_exact_match() {
        let aux = AuxProblem::synthetic(vec![bv("11")], vec![0], 2).unwrap();
        let sol = solve_lp(&build_aux_lp(&aux)).unwrap();
        let sol = sol.optimal().unwrap();
        assert!(sol.value.abs() <= 1e-9);
        assert!((sol.x[0] - 1.0).abs() <= 1e-9 && (sol.x[1] - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn aux_lp_feasible_iff_k_fits() {
        for k in 0..5 {
            let aux = AuxProblem::synthetic(vec![bv("101"), bv("011")], vec![1, 0], k).unwrap();
            let out = solve_lp(&build_aux_lp(&aux)).unwrap();
            assert_eq!(matches!(out, LpOutcome::Optimal(_)), k <= 3, "k' = {k}");
        }
    }

    #[test]
    fn validation() {
        let mut lp = LinearProgram::new(vec![1.0, 2.0]);
        lp.add_le(vec![1.0], 3.0);
        assert!(lp.validate().is_err());
        let mut lp = LinearProgram::new(vec![1.0]);
        lp.set_bounds(0, 2.0, 1.0);
        assert!(lp.validate().is_err());
    }
}
