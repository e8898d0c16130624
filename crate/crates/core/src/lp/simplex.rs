//! Two-phase dense tableau simplex with Bland's rule.

use super::{LinearProgram, LpOutcome, LpSolution, TOLERANCE};
use crate::error::{MavError, Result};

/// How an original variable is expressed through nonnegative columns.
#[derive(Debug, Clone, Copy)]
enum Column {
    /// `x = lo + y`
    Shift { lo: f64, col: usize },
    /// `x = hi - y`
    Mirror { hi: f64, col: usize },
    /// `x = y⁺ - y⁻`
    Split { pos: usize, neg: usize },
}

enum Phase {
    Optimal,
    Unbounded,
}

struct Tableau {
    /// Constraint rows; the last entry of each row is the right-hand side.
    rows: Vec<Vec<f64>>,
    /// Reduced-cost row for the current phase; last entry is `-objective`.
    costs: Vec<f64>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> f64 {
        self.rows[r][self.width]
    }

    fn price(&mut self, cost: &[f64]) {
        let mut d = cost.to_vec();
        d.push(0.0);
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = cost[b];
            if cb != 0.0 {
                for (dj, aj) in d.iter_mut().zip(&self.rows[r]) {
                    *dj -= cb * aj;
                }
            }
        }
        self.costs = d;
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
                row[c] = 0.0;
                let last = row.len() - 1;
                if row[last].abs() < TOLERANCE * 1e-3 {
                    row[last] = 0.0;
                }
            }
        }
        let f = self.costs[c];
        if f != 0.0 {
            for (v, pv) in self.costs.iter_mut().zip(&pivot_row) {
                *v -= f * pv;
            }
            self.costs[c] = 0.0;
        }
        self.basis[r] = c;
    }

    fn optimize(&mut self, allowed: usize, max_iter: usize) -> Result<Phase> {
        for _ in 0..max_iter {
            let Some(enter) = (0..allowed).find(|&j| self.costs[j] < -TOLERANCE) else {
                return Ok(Phase::Optimal);
            };
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..self.rows.len() {
                let a = self.rows[r][enter];
                if a <= TOLERANCE {
                    continue;
                }
                let ratio = self.rhs(r).max(0.0) / a;
                leave = match leave {
                    None => Some((r, ratio)),
                    Some((lr, lratio)) => {
                        if ratio < lratio - TOLERANCE
                            || (ratio <= lratio + TOLERANCE && self.basis[r] < self.basis[lr])
                        {
                            Some((r, ratio))
                        } else {
                            Some((lr, lratio))
                        }
                    }
                };
            }
            match leave {
                None => return Ok(Phase::Unbounded),
                Some((r, _)) => self.pivot(r, enter),
            }
        }
        Err(MavError::Solver(format!(
            "iteration limit {max_iter} reached without convergence"
        )))
    }
}

/// Solves `lp` to optimality or classifies it as infeasible or unbounded.
pub fn solve_lp(lp: &LinearProgram) -> Result<LpOutcome> {
    lp.validate()?;

    let mut columns = Vec::with_capacity(lp.num_vars());
    let mut upper_rows = Vec::new();
    let mut structural = 0;
    for &(lo, hi) in &lp.bounds {
        if lo.is_finite() {
            columns.push(Column::Shift { lo, col: structural });
            if hi.is_finite() {
                upper_rows.push((structural, hi - lo));
            }
            structural += 1;
        } else if hi.is_finite() {
            columns.push(Column::Mirror { hi, col: structural });
            structural += 1;
        } else {
            columns.push(Column::Split {
                pos: structural,
                neg: structural + 1,
            });
            structural += 2;
        }
    }

    // row over x -> (row over columns, constant part)
    let translate = |row: &[f64]| -> (Vec<f64>, f64) {
        let mut out = vec![0.0; structural];
        let mut constant = 0.0;
        for (a, col) in row.iter().zip(&columns) {
            match *col {
                Column::Shift { lo, col } => {
                    out[col] += a;
                    constant += a * lo;
                }
                Column::Mirror { hi, col } => {
                    out[col] -= a;
                    constant += a * hi;
                }
                Column::Split { pos, neg } => {
                    out[pos] += a;
                    out[neg] -= a;
                }
            }
        }
        (out, constant)
    };

    // (coefficients, rhs, has slack)
    let mut constraints: Vec<(Vec<f64>, f64, bool)> = Vec::new();
    for (row, b) in &lp.equalities {
        let (coeffs, c) = translate(row);
        constraints.push((coeffs, b - c, false));
    }
    for (row, b) in &lp.inequalities {
        let (coeffs, c) = translate(row);
        constraints.push((coeffs, b - c, true));
    }
    for &(col, ub) in &upper_rows {
        let mut coeffs = vec![0.0; structural];
        coeffs[col] = 1.0;
        constraints.push((coeffs, ub, true));
    }

    let slacks = constraints.iter().filter(|c| c.2).count();
    let needs_artificial: Vec<bool> = constraints.iter().map(|(_, b, s)| !*s || *b < 0.0).collect();
    let artificials = needs_artificial.iter().filter(|&&a| a).count();
    let first_artificial = structural + slacks;
    let width = first_artificial + artificials;

    let mut rows = Vec::with_capacity(constraints.len());
    let mut basis = Vec::with_capacity(constraints.len());
    let (mut next_slack, mut next_art) = (structural, first_artificial);
    for ((coeffs, b, has_slack), &art) in constraints.into_iter().zip(&needs_artificial) {
        let mut row = vec![0.0; width + 1];
        row[..structural].copy_from_slice(&coeffs);
        let slack_col = has_slack.then(|| {
            row[next_slack] = 1.0;
            next_slack += 1;
            next_slack - 1
        });
        row[width] = b;
        if b < 0.0 {
            for v in row.iter_mut() {
                *v = -*v;
            }
        }
        if art {
            row[next_art] = 1.0;
            basis.push(next_art);
            next_art += 1;
        } else {
            basis.push(slack_col.expect("rows without artificials carry a slack"));
        }
        rows.push(row);
    }

    let mut tableau = Tableau {
        rows,
        costs: Vec::new(),
        basis,
        width,
    };
    let max_iter = 10_000 + 100 * (width + tableau.rows.len());

    if artificials > 0 {
        let mut cost = vec![0.0; width];
        for c in cost.iter_mut().skip(first_artificial) {
            *c = 1.0;
        }
        tableau.price(&cost);
        tableau.optimize(width, max_iter)?;
        let residual: f64 = (0..tableau.rows.len())
            .filter(|&r| tableau.basis[r] >= first_artificial)
            .map(|r| tableau.rhs(r))
            .sum();
        let scale = 1.0
            + lp
                .equalities
                .iter()
                .chain(&lp.inequalities)
                .map(|(_, b)| b.abs())
                .fold(0.0, f64::max);
        if residual > TOLERANCE * scale {
            return Ok(LpOutcome::Infeasible);
        }
        // Move remaining (zero-level) artificials out of the basis where a
        // structural or slack column can replace them.
        for r in 0..tableau.rows.len() {
            if tableau.basis[r] < first_artificial {
                continue;
            }
            let candidate = (0..first_artificial)
                .filter(|&j| tableau.rows[r][j].abs() > TOLERANCE)
                .max_by(|&a, &b| tableau.rows[r][a].abs().total_cmp(&tableau.rows[r][b].abs()));
            if let Some(j) = candidate {
                tableau.pivot(r, j);
            }
        }
    }

    let mut cost = vec![0.0; width];
    let (obj, _) = translate(&lp.objective);
    cost[..structural].copy_from_slice(&obj);
    tableau.price(&cost);
    match tableau.optimize(first_artificial, max_iter)? {
        Phase::Unbounded => return Ok(LpOutcome::Unbounded),
        Phase::Optimal => {}
    }

    let mut y = vec![0.0; width];
    for (r, &b) in tableau.basis.iter().enumerate() {
        y[b] = tableau.rhs(r).max(0.0);
    }
    let x: Vec<f64> = columns
        .iter()
        .map(|col| match *col {
            Column::Shift { lo, col } => lo + y[col],
            Column::Mirror { hi, col } => hi - y[col],
            Column::Split { pos, neg } => y[pos] - y[neg],
        })
        .collect();
    let value = lp.evaluate(&x);
    Ok(LpOutcome::Optimal(LpSolution { x, value }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lower_bound_row() {
        // min q s.t. -q <= -3
        let mut lp = LinearProgram::new(vec![1.0]);
        lp.add_le(vec![-1.0], -3.0);
        let sol = solve_lp(&lp).unwrap();
        assert!((sol.optimal().unwrap().value - 3.0).abs() <= 1e-9);
    }

    #[test]
    fn pigeonhole_infeasible() {
        let mut lp = LinearProgram::new(vec![0.0, 0.0]);
        lp.set_bounds(0, 0.0, 1.0).set_bounds(1, 0.0, 1.0);
        lp.add_eq(vec![1.0, 1.0], 3.0);
        assert_eq!(solve_lp(&lp).unwrap(), LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_ray() {
        let mut lp = LinearProgram::new(vec![-1.0, 0.0]);
        lp.add_le(vec![-1.0, 1.0], 1.0);
        assert_eq!(solve_lp(&lp).unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn free_and_mirrored_variables() {
        // min x + y with x free, y <= 4, x >= y - 2 and x + y >= 1
        let mut lp = LinearProgram::new(vec![1.0, 1.0]);
        lp.set_bounds(0, f64::NEG_INFINITY, f64::INFINITY);
        lp.set_bounds(1, f64::NEG_INFINITY, 4.0);
        lp.add_le(vec![-1.0, 1.0], 2.0);
        lp.add_le(vec![-1.0, -1.0], -1.0);
        let out = solve_lp(&lp).unwrap();
        let sol = out.optimal().unwrap();
        assert!((sol.value - 1.0).abs() <= 1e-9);
        assert!(lp.max_violation(&sol.x) <= 1e-9);
    }

    #[test]
    fn degenerate_redundant_equalities() {
        // duplicated equality rows leave a zero artificial in the basis
        let mut lp = LinearProgram::new(vec![1.0, 2.0, 0.0]);
        lp.add_eq(vec![1.0, 1.0, 1.0], 2.0);
        lp.add_eq(vec![2.0, 2.0, 2.0], 4.0);
        lp.add_le(vec![1.0, 0.0, 0.0], 1.0);
        lp.add_le(vec![0.0, 0.0, 1.0], 0.5);
        let out = solve_lp(&lp).unwrap();
        let sol = out.optimal().unwrap();
        assert!((sol.value - 2.0).abs() <= 1e-9, "{sol:?}");
        assert!(lp.max_violation(&sol.x) <= 1e-9);
    }
}
