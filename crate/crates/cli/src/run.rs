use std::str::FromStr;
use std::time::Instant;

use mav_core::baselines::{minisum_committee, three_approx};
use mav_core::oracle::{exact_opt, OracleBudget};
use mav_core::ptas::{derive_params, ptas_solve_with, AuxCase, CaseLimits};
use mav_core::{objective, Election};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, CliResult};
use crate::generate::generate_instance;
use crate::report::{ratio, BenchRecord, DiagnosticsRecord, RunReport, SummaryRecord};

/// Overrides the exact solver's candidate limit.
pub const ENV_ORACLE_MAX_M: &str = "MAV_ORACLE_MAX_M";
/// Overrides the star-position limit of the `2^β` enumerations.
pub const ENV_AUX_MAX_BETA: &str = "MAV_AUX_MAX_BETA";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Exact,
    Minisum,
    KCompletion,
    Ptas,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Exact => "exact",
            Algorithm::Minisum => "minisum",
            Algorithm::KCompletion => "kcompletion",
            Algorithm::Ptas => "ptas",
        }
    }
}

impl FromStr for Algorithm {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "exact" => Ok(Algorithm::Exact),
            "minisum" => Ok(Algorithm::Minisum),
            "kcompletion" => Ok(Algorithm::KCompletion),
            "ptas" => Ok(Algorithm::Ptas),
            other => Err(CliError::Usage(format!("unknown algorithm {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    On,
    Off,
    /// Run the exact solver only when it fits the budget.
    Auto,
}

impl FromStr for OracleMode {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "on" => Ok(OracleMode::On),
            "off" => Ok(OracleMode::Off),
            "auto" => Ok(OracleMode::Auto),
            other => Err(CliError::Usage(format!("unknown oracle mode {other:?}"))),
        }
    }
}

/// `auto` or a case number / name.
pub fn parse_force_case(s: &str) -> CliResult<Option<AuxCase>> {
    if s == "auto" {
        return Ok(None);
    }
    s.parse().map(Some).map_err(|_| CliError::Usage(format!("unknown case {s:?}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Budgets {
    pub oracle: OracleBudget,
    pub limits: CaseLimits,
}

impl Budgets {
    /// Defaults, overridden by [`ENV_ORACLE_MAX_M`] and [`ENV_AUX_MAX_BETA`].
    pub fn from_env() -> CliResult<Self> {
        let mut b = Budgets::default();
        let read = |name: &str| -> CliResult<Option<usize>> {
            match std::env::var(name) {
                Ok(v) => v
                    .trim()
                    .parse()
                    .map(Some)
                    .map_err(|_| CliError::Usage(format!("{name} must be a non-negative integer, got {v:?}"))),
                Err(_) => Ok(None),
            }
        };
        if let Some(m) = read(ENV_ORACLE_MAX_M)? {
            b.oracle.max_candidates = m;
        }
        if let Some(beta) = read(ENV_AUX_MAX_BETA)? {
            b.oracle.max_beta = beta;
            b.limits.max_case1_beta = beta;
        }
        Ok(b)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions {
    pub algorithm: Algorithm,
    pub epsilon: f64,
    pub seed: u64,
    pub force_case: Option<AuxCase>,
    pub oracle: OracleMode,
    pub timing: bool,
    pub budgets: Budgets,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            algorithm: Algorithm::Ptas,
            epsilon: 0.9,
            seed: 0,
            force_case: None,
            oracle: OracleMode::Auto,
            timing: false,
            budgets: Budgets::default(),
        }
    }
}

fn oracle_value(election: &Election, opts: &SolveOptions) -> CliResult<Option<usize>> {
    let run = match opts.oracle {
        OracleMode::On => true,
        OracleMode::Off => false,
        OracleMode::Auto => election.m() <= opts.budgets.oracle.max_candidates.min(63),
    };
    if !run {
        return Ok(None);
    }
    Ok(Some(exact_opt(election, &opts.budgets.oracle)?.opt_value))
}

pub fn solve_election(election: &Election, opts: &SolveOptions) -> CliResult<RunReport> {
    let start = Instant::now();
    let mut epsilon = None;
    let mut seed = None;
    let mut diagnostics = None;
    let committee = match opts.algorithm {
        Algorithm::Exact => exact_opt(election, &opts.budgets.oracle)?.committee,
        Algorithm::Minisum => minisum_committee(election),
        Algorithm::KCompletion => three_approx(election)?,
        Algorithm::Ptas => {
            let mut params = derive_params(opts.epsilon, election.normalized().n(), opts.seed)?;
            params.force_case = opts.force_case;
            params.limits = opts.budgets.limits;
            let report = ptas_solve_with(election, &params)?;
            epsilon = Some(opts.epsilon);
            seed = Some(opts.seed);
            diagnostics = Some(DiagnosticsRecord::from(&report));
            report.committee
        }
    };
    let elapsed = start.elapsed();
    let value = objective(&committee, election)?;
    let opt = match opts.algorithm {
        Algorithm::Exact if opts.oracle != OracleMode::Off => Some(value),
        _ => oracle_value(election, opts)?,
    };
    Ok(RunReport {
        algorithm: opts.algorithm.name().into(),
        committee: committee.vector().to_string(),
        objective: value,
        opt,
        ratio: opt.and_then(|o| ratio(value, o)),
        epsilon,
        seed,
        elapsed_ms: opts.timing.then_some(elapsed.as_secs_f64() * 1e3),
        diagnostics,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KMode {
    /// Uniform in `1..=m`.
    Random,
    /// `m / 2`.
    Half,
    Fixed(usize),
}

impl FromStr for KMode {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "random" => Ok(KMode::Random),
            "half" => Ok(KMode::Half),
            other => other
                .parse()
                .map(KMode::Fixed)
                .map_err(|_| CliError::Usage(format!("k-mode must be random, half or an integer, got {other:?}"))),
        }
    }
}

/// Inclusive range written `LO..HI` or a single value.
pub fn parse_range(s: &str) -> CliResult<(usize, usize)> {
    let bad = || CliError::Usage(format!("expected LO..HI or a single integer, got {s:?}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(CliError::Usage(format!("empty range {s:?}")));
    }
    Ok((lo, hi))
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchOptions {
    pub count: usize,
    pub n_range: (usize, usize),
    pub m_range: (usize, usize),
    pub k_mode: KMode,
    /// Planted instances at this radius (capped at `m`) instead of uniform
    /// ballots.
    pub radius: Option<usize>,
    pub algorithms: Vec<Algorithm>,
    pub solve: SolveOptions,
}

impl Default for BenchOptions {
    fn default() -> Self {
        Self {
            count: 10,
            n_range: (2, 8),
            m_range: (3, 10),
            k_mode: KMode::Random,
            radius: None,
            algorithms: vec![Algorithm::KCompletion, Algorithm::Ptas],
            solve: SolveOptions::default(),
        }
    }
}

/// One line of bench output.
#[derive(Debug, Clone, PartialEq)]
pub enum BenchLine {
    Run(BenchRecord),
    Summary(SummaryRecord),
}

impl BenchLine {
    pub fn to_json(&self) -> String {
        match self {
            BenchLine::Run(r) => serde_json::to_string(r),
            BenchLine::Summary(s) => serde_json::to_string(s),
        }
        .expect("plain data serializes")
    }
}

fn sample_instance(rng: &mut ChaCha8Rng, opts: &BenchOptions) -> CliResult<(Election, u64)> {
    let n = rng.gen_range(opts.n_range.0..=opts.n_range.1);
    let m = rng.gen_range(opts.m_range.0..=opts.m_range.1);
    let k = match opts.k_mode {
        KMode::Random => rng.gen_range(1..=m.max(1)).min(m),
        KMode::Half => m / 2,
        KMode::Fixed(k) if k <= m => k,
        KMode::Fixed(k) => return Err(CliError::Usage(format!("k = {k} exceeds sampled m = {m}"))),
    };
    let seed: u64 = rng.gen();
    let election = match opts.radius {
        Some(d) => generate_instance(n, m, k, d.min(m), seed)?.0,
        None => {
            let mut inner = ChaCha8Rng::seed_from_u64(seed);
            let ballots = (0..n)
                .map(|_| mav_core::BitVector::from_bools((0..m).map(|_| inner.gen_bool(0.5))))
                .collect();
            Election::new(ballots, k)?
        }
    };
    Ok((election, seed))
}

/// Samples `count` instances from `seed` and runs every requested algorithm
/// on each. The PTAS seed of an instance is its instance seed.
pub fn bench(opts: &BenchOptions) -> CliResult<Vec<BenchLine>> {
    if opts.n_range.0 == 0 {
        return Err(CliError::Usage("n range must start at 1 or more".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.solve.seed);
    let mut lines = Vec::new();
    let mut ratios: Vec<Vec<f64>> = vec![Vec::new(); opts.algorithms.len()];
    for instance in 0..opts.count {
        let (election, instance_seed) = sample_instance(&mut rng, opts)?;
        for (a, &algorithm) in opts.algorithms.iter().enumerate() {
            let solve = SolveOptions {
                algorithm,
                seed: instance_seed,
                ..opts.solve.clone()
            };
            let report = solve_election(&election, &solve)?;
            if let Some(r) = report.ratio {
                ratios[a].push(r);
            }
            lines.push(BenchLine::Run(BenchRecord {
                record: "run".into(),
                instance,
                n: election.n(),
                m: election.m(),
                k: election.k(),
                instance_seed,
                report,
            }));
        }
    }
    for (&algorithm, rs) in opts.algorithms.iter().zip(&ratios) {
        lines.push(BenchLine::Summary(SummaryRecord {
            record: "summary".into(),
            algorithm: algorithm.name().into(),
            instances: opts.count,
            with_ratio: rs.len(),
            max_ratio: rs.iter().copied().reduce(f64::max),
            mean_ratio: (!rs.is_empty()).then(|| rs.iter().sum::<f64>() / rs.len() as f64),
        }));
    }
    Ok(lines)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ballot::parse_election;

    fn run(text: &str, algorithm: Algorithm) -> RunReport {
        let e = parse_election(text).unwrap();
        let opts = SolveOptions {
            algorithm,
            seed: 7,
            ..SolveOptions::default()
        };
        solve_election(&e, &opts).unwrap()
    }

    #[test]
    fn solve_examples() {
        let r = run("2 2 1\n10\n01\n", Algorithm::Exact);
        assert_eq!(r.objective, 2);
        let r = run("2 2 1\n10\n01\n", Algorithm::Ptas);
        assert_eq!((r.objective, r.ratio), (2, Some(1.0)));
        assert_eq!(r.seed, Some(7));
        let r = run("3 3 1\n110\n101\n100\n", Algorithm::Minisum);
        assert_eq!(r.committee, "100");
        assert!(r.elapsed_ms.is_none());
    }

    #[test]
    fn oracle_modes() {
        let e = parse_election("1 3 1\n101\n").unwrap();
        let mut opts = SolveOptions {
            algorithm: Algorithm::Minisum,
            oracle: OracleMode::Off,
            ..SolveOptions::default()
        };
        assert_eq!(solve_election(&e, &opts).unwrap().opt, None);
        opts.oracle = OracleMode::On;
        assert_eq!(solve_election(&e, &opts).unwrap().opt, Some(1));
        opts.budgets.oracle.max_candidates = 2;
        assert_eq!(solve_election(&e, &opts).unwrap_err().exit_code(), 3);
        opts.oracle = OracleMode::Auto;
        assert_eq!(solve_election(&e, &opts).unwrap().opt, None);
    }

    #[test]
    fn parsing_flags() {
        assert_eq!(parse_range("2..8").unwrap(), (2, 8));
        assert_eq!(parse_range("5").unwrap(), (5, 5));
        assert!(parse_range("8..2").is_err());
        assert_eq!("half".parse::<KMode>().unwrap(), KMode::Half);
        assert_eq!("3".parse::<KMode>().unwrap(), KMode::Fixed(3));
        assert_eq!(parse_force_case("auto").unwrap(), None);
        assert_eq!(parse_force_case("2").unwrap(), Some(AuxCase::ExhaustiveK));
        assert!(parse_force_case("9").is_err());
        assert!("fast".parse::<Algorithm>().is_err());
    }

    #[test]
    fn empty_sweep_has_only_summaries() {
        let opts = BenchOptions {
            count: 0,
            ..BenchOptions::default()
        };
        let lines = bench(&opts).unwrap();
        assert_eq!(lines.len(), 2);
        assert!(lines.iter().all(|l| matches!(l, BenchLine::Summary(s) if s.max_ratio.is_none())));
    }

    #[test]
    fn bench_ratios_hold() {
        let opts = BenchOptions {
            count: 50,
            ..BenchOptions::default()
        };
        let lines = bench(&opts).unwrap();
        assert_eq!(lines.len(), 102);
        for line in &lines {
            if let BenchLine::Summary(s) = line {
                assert_eq!(s.with_ratio, 50);
                let bound = if s.algorithm == "ptas" { 1.9 } else { 3.0 };
                assert!(s.max_ratio.unwrap() <= bound);
            }
        }
    }
}
