//! Side-by-side runs of the pivoting strategies on generated or supplied
//! matrices, measured against the eigenvalue-clipping optimum.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use psd_approx::batch;
use psd_approx::oracle::{condition_number_symmetric, psd_distance};
use psd_approx::testgen::{generate, ScenarioSpec};
use psd_approx::{
    assemble, decompose, default_epsilon, diagnose, BoundsConfig, HermitianMatrix,
    PivotStrategy,
};

use crate::args::{CompareArgs, LowerBoundMode};
use crate::commands::{emit, read_input, write_json};
use crate::error::CliError;
use crate::mm::MmMatrix;
use crate::report::{
    median, CompareReport, CompareRow, CompareSummary, Num, CORRELATION_ORACLE_NOTE, CSV_HEADER,
    SCHEMA_VERSION,
};

/// One matrix to compare.
#[derive(Clone, Debug)]
pub struct Job {
    pub scenario: String,
    pub seed: Option<u64>,
    pub a: HermitianMatrix<f64>,
    /// Correlation input: the diagonal is held at one.
    pub unit_diagonal: bool,
}

/// Parses `corr:SIGMA`, `eig:MIN:MAX` or `standard`.
pub fn parse_scenarios(s: &str, n: usize, seed: u64) -> Result<Vec<ScenarioSpec>, CliError> {
    let bad = || CliError::Usage(format!("invalid scenario '{s}' (expected corr:SIGMA, eig:MIN:MAX or standard)"));
    let parts: Vec<&str> = s.split(':').collect();
    let num = |t: &str| t.parse::<f64>().map_err(|_| bad());
    let spec = match parts.as_slice() {
        ["standard"] => return Ok(ScenarioSpec::standard(n, seed).to_vec()),
        ["corr", sigma] => ScenarioSpec::correlation(n, num(sigma)?, seed),
        ["eig", lo, hi] => ScenarioSpec::eigenvalue_range(n, num(lo)?, num(hi)?, seed),
        _ => return Err(bad()),
    };
    spec.validate()?;
    Ok(vec![spec])
}

pub fn build_jobs(args: &CompareArgs) -> Result<Vec<Job>, CliError> {
    let mut jobs = Vec::new();
    if let Some(s) = &args.scenario {
        for base in parse_scenarios(s, args.n, args.seed)? {
            for k in 0..args.seeds {
                let spec = ScenarioSpec {
                    seed: args.seed + k,
                    ..base
                };
                jobs.push(Job {
                    scenario: spec.label(),
                    seed: Some(spec.seed),
                    a: generate(&spec)?,
                    unit_diagonal: spec.is_correlation() && !args.free_diagonal,
                });
            }
        }
    }
    for path in &args.inputs {
        match read_input(path)? {
            MmMatrix::Real(a) => jobs.push(Job {
                scenario: path.display().to_string(),
                seed: None,
                a,
                unit_diagonal: false,
            }),
            MmMatrix::Complex(_) => {
                return Err(CliError::Usage(format!(
                    "{}: compare supports real matrices only",
                    path.display()
                )))
            }
        }
    }
    Ok(jobs)
}

fn settings(args: &CompareArgs) -> Vec<(PivotStrategy, bool)> {
    let strategies = if args.strategies.is_empty() {
        PivotStrategy::ALL.to_vec()
    } else {
        args.strategies.clone()
    };
    let varying: &[bool] = match args.lower_bound {
        LowerBoundMode::Fixed => &[false],
        LowerBoundMode::Varying => &[true],
        LowerBoundMode::Both => &[false, true],
    };
    strategies
        .iter()
        .flat_map(|&s| varying.iter().map(move |&v| (s, v)))
        .collect()
}

fn run_job(job: &Job, args: &CompareArgs) -> Result<Vec<CompareRow>, CliError> {
    let a = &job.a;
    let oracle = psd_distance(a)?;
    let mut cfg = BoundsConfig::for_matrix(a)
        .with_pivot_bounds(args.pivot_min, args.pivot_max)
        .with_epsilon(args.epsilon.unwrap_or_else(|| default_epsilon(a)));
    if job.unit_diagonal {
        cfg = cfg.with_fixed_diagonal(1.0);
    }
    let mut rows = Vec::new();
    for (strategy, varying) in settings(args) {
        let cfg = cfg.clone().with_varying_lower_bound(varying);
        let mut row = CompareRow {
            matrix: job.scenario.clone(),
            seed: job.seed,
            n: a.n(),
            strategy: strategy.as_str(),
            lower_bound: if varying { "varying" } else { "fixed" },
            definiteness: "unknown",
            err_fro: Num(f64::NAN),
            err_inf: Num(f64::NAN),
            oracle_error: Num(oracle),
            oracle_note: job.unit_diagonal.then_some(CORRELATION_ORACLE_NOTE),
            kappa_b: Num(f64::NAN),
            wall_time_ms: Num(f64::NAN),
            error: None,
        };
        let start = Instant::now();
        match decompose(a, &cfg, strategy).and_then(|dec| Ok((assemble(a, &dec)?, dec))) {
            Ok((b, dec)) => {
                row.wall_time_ms = Num(start.elapsed().as_secs_f64() * 1e3);
                let diag = diagnose(a, &cfg, &dec)?;
                row.definiteness = diag.definiteness.as_str();
                row.err_fro = Num(diag.err_fro);
                row.err_inf = Num(diag.err_inf);
                row.kappa_b = Num(condition_number_symmetric(&b)?);
            }
            Err(e) if e.is_numerical() => row.error = Some(e.to_string()),
            Err(e) => return Err(e.into()),
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Runs every job (in parallel when enabled) and aggregates medians.
pub fn run_compare(args: &CompareArgs) -> Result<CompareReport, CliError> {
    let jobs = build_jobs(args)?;
    let results = batch::map(&jobs, |job| run_job(job, args));
    let mut rows = Vec::new();
    for r in results {
        rows.extend(r?);
    }
    let mut groups: BTreeMap<(String, &'static str, &'static str), Vec<&CompareRow>> =
        BTreeMap::new();
    for r in &rows {
        let key = match r.seed {
            Some(_) => r.matrix.clone(),
            None => "inputs".to_string(),
        };
        groups.entry((key, r.strategy, r.lower_bound)).or_default().push(r);
    }
    let summary = groups
        .into_iter()
        .map(|((scenario, strategy, lower_bound), all)| {
            let failures = all.iter().filter(|r| r.error.is_some()).count();
            let g: Vec<_> = all.into_iter().filter(|r| r.error.is_none()).collect();
            let med = |f: fn(&CompareRow) -> f64| Num(median(&g.iter().map(|r| f(r)).collect::<Vec<_>>()));
            CompareSummary {
                scenario,
                strategy,
                lower_bound,
                count: g.len(),
                failures,
                median_err_fro: med(|r| r.err_fro.0),
                median_oracle_error: med(|r| r.oracle_error.0),
                median_kappa_b: med(|r| r.kappa_b.0),
            }
        })
        .collect();
    Ok(CompareReport {
        schema: SCHEMA_VERSION,
        rows,
        summary,
    })
}

pub fn compare_cmd(args: &CompareArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let report = run_compare(args)?;
    if let Some(path) = &args.csv {
        emit(Some(path), stdout, |w| {
            writeln!(w, "{CSV_HEADER}")?;
            report.rows.iter().try_for_each(|r| writeln!(w, "{}", r.csv_line()))
        })?;
    }
    write_json(args.json.as_deref(), stdout, &report)
}
