//! Simplex results against brute-force vertex enumeration on random boxed
//! programs, plus the relaxation bound on auxiliary programs.

mod common;

use common::random_election;
use mav_core::auxiliary::build_aux;
use mav_core::lp::{build_aux_lp, solve_lp, LinearProgram, LpOutcome};
use mav_core::oracle::{aux_ip_bruteforce, OracleBudget};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn random_boxed_lp<R: Rng>(rng: &mut R) -> LinearProgram {
    let nv = rng.gen_range(1..=4);
    let coeff = |rng: &mut R| rng.gen_range(-3i32..=3) as f64;
    let objective = (0..nv).map(|_| coeff(rng)).collect();
    let mut lp = LinearProgram::new(objective);
    for j in 0..nv {
        let lo = rng.gen_range(-3i32..=1) as f64;
        let hi = lo + rng.gen_range(0i32..=4) as f64;
        lp.set_bounds(j, lo, hi);
    }
    let rows = rng.gen_range(0..=6);
    for _ in 0..rows {
        let row: Vec<f64> = (0..nv).map(|_| coeff(rng)).collect();
        let rhs = rng.gen_range(-4i32..=6) as f64;
        if rng.gen_bool(0.2) {
            lp.add_eq(row, rhs);
        } else {
            lp.add_le(row, rhs);
        }
    }
    lp
}

/// Minimum over all basic feasible points of a bounded program, or `None`
/// when no vertex is feasible.
pub fn vertex_enumeration(lp: &LinearProgram) -> Option<f64> {
    let n = lp.num_vars();
    let mut planes: Vec<(Vec<f64>, f64)> = Vec::new();
    planes.extend(lp.equalities.iter().cloned());
    planes.extend(lp.inequalities.iter().cloned());
    for (j, &(lo, hi)) in lp.bounds.iter().enumerate() {
        let mut unit = vec![0.0; n];
        unit[j] = 1.0;
        planes.push((unit.clone(), lo));
        planes.push((unit, hi));
    }
    let mut best: Option<f64> = None;
    let total = planes.len();
    let mut pick: Vec<usize> = (0..n).collect();
    loop {
        let a = DMatrix::from_fn(n, n, |r, c| planes[pick[r]].0[c]);
        let b = DVector::from_fn(n, |r, _| planes[pick[r]].1);
        if a.determinant().abs() > 1e-9 {
            if let Some(x) = a.lu().solve(&b) {
                let x: Vec<f64> = x.iter().copied().collect();
                if lp.max_violation(&x) <= 1e-7 {
                    let v = lp.evaluate(&x);
                    best = Some(best.map_or(v, |b: f64| b.min(v)));
                }
            }
        }
        let Some(i) = (0..n).rev().find(|&i| pick[i] < total - n + i) else {
            break;
        };
        pick[i] += 1;
        for t in i + 1..n {
            pick[t] = pick[t - 1] + 1;
        }
    }
    best
}

#[test]
fn simplex_matches_vertex_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let (mut optimal, mut infeasible) = (0, 0);
    for _ in 0..300 {
        let lp = random_boxed_lp(&mut rng);
        let oracle = vertex_enumeration(&lp);
        match (solve_lp(&lp).unwrap(), oracle) {
            (LpOutcome::Optimal(sol), Some(v)) => {
                optimal += 1;
                assert!((sol.value - v).abs() <= 1e-9 * (1.0 + v.abs()), "{} vs {v}\n{}", sol.value, lp.to_text());
                assert!(lp.max_violation(&sol.x) <= 1e-9);
            }
            (LpOutcome::Infeasible, None) => infeasible += 1,
            (got, want) => panic!("simplex {got:?}, vertices {want:?}\n{}", lp.to_text()),
        }
    }
    assert!(optimal > 50 && infeasible > 10, "{optimal} optimal, {infeasible} infeasible");
}

#[test]
fn relaxation_never_exceeds_integer_optimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let mut checked = 0;
    while checked < 200 {
        let e = random_election(&mut rng, (2, 7), (2, 12), 6);
        let size = rng.gen_range(1..=e.n());
        let y = common::random_subset(&mut rng, e.n(), size);
        let k_star = rng.gen_range(0..=e.k());
        let Some(aux) = build_aux(&e, &y, k_star).unwrap().ready() else {
            continue;
        };
        let (_, q_ip) = aux_ip_bruteforce(&aux, &OracleBudget::default()).unwrap().unwrap();
        let lp = build_aux_lp(&aux);
        let sol = solve_lp(&lp).unwrap();
        let sol = sol.optimal().expect("k' <= β keeps the relaxation feasible");
        assert!(sol.value <= q_ip as f64 + 1e-9);
        assert!(lp.max_violation(&sol.x) <= 1e-9);
        checked += 1;
    }
}
