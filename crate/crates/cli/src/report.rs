//! JSON report types, schema version 1.
//!
//! Non-finite numbers are written as the strings `"inf"`, `"-inf"` and
//! `"nan"`; every other number is a JSON number.

use serde::{Serialize, Serializer};

use psd_approx::{BoundsConfig, DiagnosticsReport, PivotStrategy};

pub const SCHEMA_VERSION: u32 = 1;

pub const CORRELATION_ORACLE_NOTE: &str =
    "lower bound, not attainable under unit-diagonal constraint";

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v = self.0;
        if v.is_finite() {
            s.serialize_f64(v)
        } else if v.is_nan() {
            s.serialize_str("nan")
        } else if v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }
}

fn nums(v: &[f64]) -> Vec<Num> {
    v.iter().copied().map(Num).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsEcho {
    pub diag_min: Vec<Num>,
    pub diag_max: Vec<Num>,
    pub pivot_min: Num,
    pub pivot_max: Num,
    pub epsilon: Num,
    pub varying_lower_bound: bool,
}

impl From<&BoundsConfig> for BoundsEcho {
    fn from(c: &BoundsConfig) -> Self {
        BoundsEcho {
            diag_min: nums(&c.diag_lower),
            diag_max: nums(&c.diag_upper),
            pivot_min: Num(c.pivot_lower),
            pivot_max: Num(c.pivot_upper),
            epsilon: Num(c.epsilon),
            varying_lower_bound: c.varying_lower_bound,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub n: usize,
    pub strategy: &'static str,
    pub bounds: BoundsEcho,
    pub d_min: Num,
    pub d_max: Num,
    pub definiteness: &'static str,
    pub err_inf: Num,
    pub err_fro: Num,
    pub err_inf_bound: Num,
    pub err_fro_bound: Num,
    pub kappa_l_bound: Num,
    pub kappa_d_bound: Num,
    pub kappa_b_bound: Num,
    pub determinant: Num,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_error: Option<Num>,
    pub wall_time_ms: f64,
}

impl RunReport {
    pub fn new(
        n: usize,
        strategy: PivotStrategy,
        cfg: &BoundsConfig,
        diag: &DiagnosticsReport,
        wall_time_ms: f64,
    ) -> Self {
        RunReport {
            schema: SCHEMA_VERSION,
            n,
            strategy: strategy.as_str(),
            bounds: cfg.into(),
            d_min: Num(diag.d_min),
            d_max: Num(diag.d_max),
            definiteness: diag.definiteness.as_str(),
            err_inf: Num(diag.err_inf),
            err_fro: Num(diag.err_fro),
            err_inf_bound: Num(diag.err_inf_bound),
            err_fro_bound: Num(diag.err_fro_bound),
            kappa_l_bound: Num(diag.kappa_l_bound),
            kappa_d_bound: Num(diag.kappa_d_bound),
            kappa_b_bound: Num(diag.kappa_b_bound),
            determinant: Num(diag.det),
            oracle_error: None,
            wall_time_ms,
        }
    }
}

/// One decomposition in a comparison run.
#[derive(Clone, Debug, Serialize)]
pub struct CompareRow {
    pub matrix: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub n: usize,
    pub strategy: &'static str,
    pub lower_bound: &'static str,
    pub definiteness: &'static str,
    pub err_fro: Num,
    pub err_inf: Num,
    pub oracle_error: Num,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_note: Option<&'static str>,
    pub kappa_b: Num,
    pub wall_time_ms: Num,
    /// Set when the run ended in a numerical failure; metrics are then NaN.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Medians over the successful rows sharing a scenario, strategy and
/// lower-bound setting.
#[derive(Clone, Debug, Serialize)]
pub struct CompareSummary {
    pub scenario: String,
    pub strategy: &'static str,
    pub lower_bound: &'static str,
    pub count: usize,
    pub failures: usize,
    pub median_err_fro: Num,
    pub median_oracle_error: Num,
    pub median_kappa_b: Num,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    pub schema: u32,
    pub rows: Vec<CompareRow>,
    pub summary: Vec<CompareSummary>,
}

pub const CSV_HEADER: &str =
    "matrix,seed,n,strategy,lower_bound,definiteness,err_fro,err_inf,oracle_error,kappa_b,wall_time_ms";

fn csv_num(v: f64) -> String {
    match v {
        v if v.is_finite() => crate::mm::format_f64(v),
        v if v.is_nan() => "nan".into(),
        v if v > 0.0 => "inf".into(),
        _ => "-inf".into(),
    }
}

impl CompareRow {
    pub fn csv_line(&self) -> String {
        let matrix = if self.matrix.contains([',', '"']) {
            format!("\"{}\"", self.matrix.replace('"', "\"\""))
        } else {
            self.matrix.clone()
        };
        [
            matrix,
            self.seed.map(|s| s.to_string()).unwrap_or_default(),
            self.n.to_string(),
            self.strategy.into(),
            self.lower_bound.into(),
            self.definiteness.into(),
            csv_num(self.err_fro.0),
            csv_num(self.err_inf.0),
            csv_num(self.oracle_error.0),
            csv_num(self.kappa_b.0),
            csv_num(self.wall_time_ms.0),
        ]
        .join(",")
    }
}

/// Median with the two middle values averaged for even counts; NaN if empty.
pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    match v.len() {
        0 => f64::NAN,
        k if k % 2 == 1 => v[k / 2],
        k => 0.5 * (v[k / 2 - 1] + v[k / 2]),
    }
}
