use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use num_complex::Complex64;
use psd_approx::oracle::psd_distance;
use psd_approx::testgen::{generate, ScenarioSpec};
use psd_approx::{
    assemble, decompose, default_epsilon, diagnose, BoundsConfig, HermitianMatrix,
    ModifiedDecomposition, Scalar,
};
use serde::Serialize;

use crate::args::{ApproxArgs, BoundArgs, CertifyArgs, DecomposeArgs, GenKind, GenerateArgs};
use crate::error::CliError;
use crate::mm::{self, MmMatrix, MmScalar};
use crate::report::{Num, RunReport, SCHEMA_VERSION};

pub fn read_input(path: &Path) -> Result<MmMatrix, CliError> {
    let f = File::open(path).map_err(CliError::io(path.display().to_string()))?;
    mm::read_matrix_market(BufReader::new(f))
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(CliError::io(path.display().to_string()))
}

/// Runs `write` against `path`, or against `stdout` when no path is given.
pub fn emit(
    path: Option<&Path>,
    stdout: &mut dyn Write,
    write: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let mut w = create(p)?;
            write(&mut w)
                .and_then(|_| w.flush())
                .map_err(CliError::io(p.display().to_string()))
        }
        None => write(stdout).map_err(CliError::io("<stdout>")),
    }
}

pub fn write_json<T: Serialize>(
    path: Option<&Path>,
    stdout: &mut dyn Write,
    value: &T,
) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Usage(e.to_string()))?;
    emit(path, stdout, |w| writeln!(w, "{text}"))
}

fn diag_bound(arg: &Option<String>, n: usize, default: f64) -> Result<Vec<f64>, CliError> {
    let Some(s) = arg else {
        return Ok(vec![default; n]);
    };
    if let Ok(v) = s.parse::<f64>() {
        return Ok(vec![v; n]);
    }
    let f = File::open(s).map_err(CliError::io(s.clone()))?;
    let v = mm::read_vector(BufReader::new(f))?;
    if v.len() != n {
        return Err(psd_approx::Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        }
        .into());
    }
    Ok(v)
}

/// Bounds for `a` from the command-line flags.
pub fn build_bounds<T: Scalar>(
    b: &BoundArgs,
    a: &HermitianMatrix<T>,
) -> Result<BoundsConfig, CliError> {
    let n = a.n();
    let (lower, upper) = match b.diag_fixed {
        Some(v) => (vec![v; n], vec![v; n]),
        None => (
            diag_bound(&b.diag_min, n, f64::NEG_INFINITY)?,
            diag_bound(&b.diag_max, n, f64::INFINITY)?,
        ),
    };
    Ok(BoundsConfig::for_matrix(a)
        .with_diag_bounds(lower, upper)
        .with_pivot_bounds(b.pivot_min, b.pivot_max)
        .with_epsilon(b.epsilon.unwrap_or_else(|| default_epsilon(a)))
        .with_varying_lower_bound(b.varying_lower_bound))
}

struct Run<T> {
    dec: ModifiedDecomposition<T>,
    report: RunReport,
    b: HermitianMatrix<T>,
}

fn run_one<T: Scalar>(a: &HermitianMatrix<T>, args: &BoundArgs) -> Result<Run<T>, CliError> {
    let cfg = build_bounds(args, a)?;
    let start = Instant::now();
    let dec = decompose(a, &cfg, args.strategy)?;
    let b = assemble(a, &dec)?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    let diag = diagnose(a, &cfg, &dec)?;
    let report = RunReport::new(a.n(), args.strategy, &cfg, &diag, ms);
    Ok(Run { dec, report, b })
}

fn write_factors<T: MmScalar>(prefix: &Path, dec: &ModifiedDecomposition<T>) -> Result<(), CliError> {
    let file = |suffix: &str| {
        let mut s = prefix.as_os_str().to_owned();
        s.push(suffix);
        std::path::PathBuf::from(s)
    };
    let one_based: Vec<f64> = dec.p().iter().map(|&i| (i + 1) as f64).collect();
    let out = file(".L.mtx");
    emit(Some(&out), &mut std::io::sink(), |w| mm::write_general(w, dec.l()))?;
    for (suffix, v) in [
        (".d.txt", dec.d()),
        (".p.txt", &one_based[..]),
        (".omega.txt", dec.omega()),
        (".delta.txt", dec.delta()),
    ] {
        emit(Some(&file(suffix)), &mut std::io::sink(), |w| mm::write_vector(w, v))?;
    }
    Ok(())
}

fn approx_typed<T: MmScalar>(
    a: &HermitianMatrix<T>,
    args: &ApproxArgs,
    oracle: Option<f64>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let mut run = run_one(a, &args.bounds)?;
    run.report.oracle_error = oracle.map(Num);
    emit(args.output.as_deref(), stdout, |w| mm::write_hermitian(w, &run.b))?;
    if let Some(prefix) = &args.factors {
        write_factors(prefix, &run.dec)?;
    }
    match &args.json {
        Some(p) => write_json(Some(p), stdout, &run.report)?,
        None => {
            let _ = writeln!(
                stderr,
                "{}: err_fro = {}, d in [{}, {}]",
                run.report.definiteness,
                mm::format_f64(run.report.err_fro.0),
                mm::format_f64(run.report.d_min.0),
                mm::format_f64(run.report.d_max.0),
            );
        }
    }
    Ok(())
}

pub fn approx(
    args: &ApproxArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    match read_input(&args.input)? {
        MmMatrix::Real(a) => {
            let oracle = if args.oracle { Some(psd_distance(&a)?) } else { None };
            approx_typed(&a, args, oracle, stdout, stderr)
        }
        MmMatrix::Complex(a) => {
            if args.oracle {
                return Err(CliError::Usage("--oracle requires a real matrix".into()));
            }
            approx_typed(&a, args, None, stdout, stderr)
        }
    }
}

#[derive(Serialize)]
struct FactorsJson {
    schema: u32,
    n: usize,
    strategy: &'static str,
    /// 1-based elimination order.
    p: Vec<usize>,
    d: Vec<Num>,
    omega: Vec<Num>,
    delta: Vec<Num>,
    /// Rows of `L`; complex entries are `[re, im]` pairs.
    l: Vec<Vec<serde_json::Value>>,
}

trait JsonEntry {
    fn json(self) -> serde_json::Value;
}

impl JsonEntry for f64 {
    fn json(self) -> serde_json::Value {
        self.into()
    }
}

impl JsonEntry for Complex64 {
    fn json(self) -> serde_json::Value {
        serde_json::json!([self.re, self.im])
    }
}

fn decompose_typed<T: MmScalar + JsonEntry>(
    a: &HermitianMatrix<T>,
    args: &DecomposeArgs,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let run = run_one(a, &args.bounds)?;
    let dec = &run.dec;
    let n = dec.n();
    let nums = |v: &[f64]| v.iter().copied().map(Num).collect();
    let out = FactorsJson {
        schema: SCHEMA_VERSION,
        n,
        strategy: args.bounds.strategy.as_str(),
        p: dec.p().iter().map(|i| i + 1).collect(),
        d: nums(dec.d()),
        omega: nums(dec.omega()),
        delta: nums(dec.delta()),
        l: (0..n)
            .map(|i| dec.l().row(i)[..=i].iter().map(|&v| v.json()).collect())
            .collect(),
    };
    write_json(args.output.as_deref(), stdout, &out)
}

pub fn decompose_cmd(args: &DecomposeArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    match read_input(&args.input)? {
        MmMatrix::Real(a) => decompose_typed(&a, args, stdout),
        MmMatrix::Complex(a) => decompose_typed(&a, args, stdout),
    }
}

pub fn certify(args: &CertifyArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let report = match read_input(&args.input)? {
        MmMatrix::Real(a) => run_one(&a, &args.bounds)?.report,
        MmMatrix::Complex(a) => run_one(&a, &args.bounds)?.report,
    };
    if let Some(p) = &args.json {
        write_json(Some(p), stdout, &report)?;
    }
    emit(None, stdout, |w| {
        writeln!(
            w,
            "{} (d_min = {}, d_max = {})",
            report.definiteness,
            mm::format_f64(report.d_min.0),
            mm::format_f64(report.d_max.0)
        )
    })
}

pub fn generate_cmd(args: &GenerateArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let spec = match args.kind {
        GenKind::Corr => ScenarioSpec::correlation(args.n, args.sigma, args.seed),
        GenKind::Eig => {
            ScenarioSpec::eigenvalue_range(args.n, args.lambda_min, args.lambda_max, args.seed)
        }
    };
    let a = generate(&spec)?;
    emit(args.output.as_deref(), stdout, |w| mm::write_hermitian(w, &a))
}
