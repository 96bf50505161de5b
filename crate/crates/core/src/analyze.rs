//! Closed-form diagnostics of a decomposition: approximation error norms,
//! a-priori error and condition bounds, and the definiteness certificate.
//!
//! Everything here is `O(n^2)`; spectra of actual matrices are only computed
//! by [`oracle`](crate::oracle).

use std::fmt;

use crate::bounds::{default_epsilon, BoundsConfig};
use crate::decomposition::{ModifiedDecomposition, PivotStrategy};
use crate::error::{Error, Result};
use crate::factorize::decompose;
use crate::matrix::HermitianMatrix;
use crate::reconstruct::{assemble, determinant};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Definiteness {
    PositiveDefinite,
    PositiveSemidefinite,
    Indefinite,
}

impl Definiteness {
    pub fn as_str(self) -> &'static str {
        match self {
            Definiteness::PositiveDefinite => "positive-definite",
            Definiteness::PositiveSemidefinite => "positive-semidefinite",
            Definiteness::Indefinite => "indefinite",
        }
    }

    /// Positive definite matrices are also positive semidefinite.
    pub fn is_psd(self) -> bool {
        !matches!(self, Definiteness::Indefinite)
    }
}

impl fmt::Display for Definiteness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Everything reported about one approximation run.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagnosticsReport {
    /// `||B - A||_inf` (equal to `||B - A||_1`, an upper bound on `||B - A||_2`).
    pub err_inf: f64,
    pub err_fro: f64,
    pub err_inf_bound: f64,
    pub err_fro_bound: f64,
    pub kappa_l_bound: f64,
    pub kappa_d_bound: f64,
    pub kappa_b_bound: f64,
    pub definiteness: Definiteness,
    pub det: f64,
    pub d_min: f64,
    pub d_max: f64,
}

/// `B` is PD iff all pivots are positive, PSD iff all are nonnegative.
pub fn psd_certificate<T: Scalar>(dec: &ModifiedDecomposition<T>) -> Definiteness {
    let d = dec.d();
    if d.iter().all(|&v| v > 0.0) {
        Definiteness::PositiveDefinite
    } else if d.iter().all(|&v| v >= 0.0) {
        Definiteness::PositiveSemidefinite
    } else {
        Definiteness::Indefinite
    }
}

/// `||B - A||_inf` and `||B - A||_F` from `delta`, `omega` and `A` alone.
///
/// Valid when every zero pivot at position `i` is followed by `omega = 0` for
/// all positions `>= i`; always the case when the pivot lower bound is positive.
pub fn error_norms<T: Scalar>(
    a: &HermitianMatrix<T>,
    dec: &ModifiedDecomposition<T>,
) -> Result<(f64, f64)> {
    let n = a.n();
    if dec.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: dec.n(),
        });
    }
    let (p, omega, delta) = (dec.p(), dec.omega(), dec.delta());
    if let Some(i) = dec.d().iter().position(|&v| v == 0.0) {
        if p[i..].iter().any(|&pj| omega[pj] != 0.0) {
            return Err(Error::PreconditionViolated(i));
        }
    }
    let mut err_inf = 0.0f64;
    let mut fro_sq = 0.0;
    for i in 0..n {
        let pi = p[i];
        let row = a.row(pi);
        let (mut before, mut before_sq) = (0.0, 0.0);
        for &pj in &p[..i] {
            let v = row[pj];
            before += v.abs();
            before_sq += v.abs_sqr();
        }
        let after: f64 = p[i + 1..]
            .iter()
            .map(|&pj| (1.0 - omega[pj]) * row[pj].abs())
            .sum();
        let s = 1.0 - omega[pi];
        err_inf = err_inf.max(delta[pi].abs() + s * before + after);
        fro_sq += delta[pi] * delta[pi] + 2.0 * s * s * before_sq;
    }
    Ok((err_inf, fro_sq.sqrt()))
}

/// `||B - A||` computed entrywise from the assembled approximation.
pub fn direct_error_norms<T: Scalar>(
    a: &HermitianMatrix<T>,
    b: &HermitianMatrix<T>,
) -> Result<(f64, f64)> {
    let e = b.as_matrix().sub(a.as_matrix())?;
    Ok((e.norm_inf(), e.frobenius_norm()))
}

/// A-priori bounds `a + b + (n-1) c` and `sqrt(n ((a+b)^2 + (n-1) c^2))` with
/// `a = max y_i`, `b = max |A_ii|`, `c = max_{i != j} |A_ij|`.
///
/// Infinite when some `y_i` is infinite or `l < 0`.
pub fn error_bounds<T: Scalar>(a: &HermitianMatrix<T>, cfg: &BoundsConfig) -> (f64, f64) {
    let n = a.n();
    let ymax = cfg.diag_upper.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(cfg.pivot_lower >= 0.0) || !ymax.is_finite() {
        return (f64::INFINITY, f64::INFINITY);
    }
    let bmax = (0..n).map(|i| a.diag(i).abs()).fold(0.0, f64::max);
    let mut c = 0.0f64;
    for i in 0..n {
        for j in 0..i {
            c = c.max(a[(i, j)].abs());
        }
    }
    let m = (n as f64 - 1.0).max(0.0);
    let ab = ymax + bmax;
    (ab + m * c, (n as f64 * (ab * ab + m * c * c)).sqrt())
}

/// Bounds on `kappa_2(L)`, `kappa_2(D)` and `kappa_2(B)` implied by `l > 0`:
/// `2 (a/l)^(n/2)`, `b/l`, `4 a^n b / l^(n+1)` with `a` the mean of `y` and
/// `b = min(u, max y)`.
pub fn condition_bounds(cfg: &BoundsConfig, n: usize) -> Result<(f64, f64, f64)> {
    let l = cfg.pivot_lower;
    if !(l > 0.0) {
        return Err(Error::NonPositiveLowerBound(l));
    }
    let y = &cfg.diag_upper;
    let a = y.iter().sum::<f64>() / n as f64;
    let b = cfg
        .pivot_upper
        .min(y.iter().copied().fold(f64::NEG_INFINITY, f64::max));
    let nf = n as f64;
    // log space: the powers overflow long before the bounds stop being useful
    let log_ratio = (a / l).ln();
    let kappa_l = (std::f64::consts::LN_2 + 0.5 * nf * log_ratio).exp();
    let kappa_d = b / l;
    let kappa_b = (4.0f64.ln() + nf * a.ln() + b.ln() - (nf + 1.0) * l.ln()).exp();
    let nan_to_inf = |v: f64| if v.is_nan() { f64::INFINITY } else { v };
    Ok((nan_to_inf(kappa_l), nan_to_inf(kappa_d), nan_to_inf(kappa_b)))
}

/// Interval `[(tr A / (n beta))^(n / (2(n-1))), 2 (tr A / (n alpha))^(n/2)]`
/// containing `kappa_2(L)` for the `LDL^H` factorization of a positive
/// definite `A`, where `alpha`, `beta` are the smallest and largest pivots.
pub fn ldl_condition_interval<T: Scalar>(a: &HermitianMatrix<T>) -> Result<(f64, f64)> {
    let n = a.n();
    let cfg = BoundsConfig::unconstrained(n, default_epsilon(a));
    let dec = decompose(a, &cfg, PivotStrategy::Natural)?;
    let scale = (0..n).map(|i| a.diag(i).abs()).fold(0.0, f64::max);
    let unmodified = dec.omega().iter().all(|&w| w == 1.0)
        && dec.delta().iter().all(|&v| v.abs() <= 1e-10 * scale);
    if !unmodified || !dec.d().iter().all(|&v| v > 0.0) {
        return Err(Error::NotPositiveDefinite);
    }
    let (dmin, dmax) = (dec.d_min(), dec.d_max());
    let nf = n as f64;
    let tr = a.trace();
    let lower = if n == 1 {
        1.0
    } else {
        (tr / (nf * dmax)).powf(nf / (2.0 * (nf - 1.0)))
    };
    let upper = 2.0 * (tr / (nf * dmin)).powf(0.5 * nf);
    Ok((lower, upper))
}

/// Collects all diagnostics for `dec`, a decomposition of `a` under `cfg`.
///
/// Error norms use the closed-form expressions where their precondition
/// holds and fall back to the assembled matrix otherwise. Bounds that do not
/// apply are reported as `+inf`.
pub fn diagnose<T: Scalar>(
    a: &HermitianMatrix<T>,
    cfg: &BoundsConfig,
    dec: &ModifiedDecomposition<T>,
) -> Result<DiagnosticsReport> {
    let n = a.n();
    let (err_inf, err_fro) = match error_norms(a, dec) {
        Ok(v) => v,
        Err(Error::PreconditionViolated(_)) => direct_error_norms(a, &assemble(a, dec)?)?,
        Err(e) => return Err(e),
    };
    let (err_inf_bound, err_fro_bound) = error_bounds(a, cfg);
    let (kappa_l_bound, kappa_d_bound, kappa_b_bound) =
        condition_bounds(cfg, n).unwrap_or((f64::INFINITY, f64::INFINITY, f64::INFINITY));
    Ok(DiagnosticsReport {
        err_inf,
        err_fro,
        err_inf_bound,
        err_fro_bound,
        kappa_l_bound,
        kappa_d_bound,
        kappa_b_bound,
        definiteness: psd_certificate(dec),
        det: determinant(dec),
        d_min: dec.d_min(),
        d_max: dec.d_max(),
    })
}
