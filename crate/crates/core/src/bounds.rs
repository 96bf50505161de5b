//! Bounds on the diagonal of the approximation and on the pivots.

use crate::error::{Error, Result};
use crate::matrix::HermitianMatrix;
use crate::scalar::Scalar;

/// Lower/upper bounds `x`, `y` on the approximation's diagonal, bounds
/// `l`, `u` on the pivots, and the zero-pivot radius `epsilon`.
///
/// Unbounded entries are IEEE infinities.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundsConfig {
    /// `x_i`: lower bound on `B_ii`, may be `-inf`.
    pub diag_lower: Vec<f64>,
    /// `y_i`: upper bound on `B_ii`, may be `+inf`.
    pub diag_upper: Vec<f64>,
    /// `l`: lower bound on every pivot.
    pub pivot_lower: f64,
    /// `u`: upper bound on every pivot, may be `+inf`.
    pub pivot_upper: f64,
    /// Pivots with magnitude in `(0, epsilon)` are never produced.
    pub epsilon: f64,
    /// Replace `l` per index by `clamp(c_i / 2, l, u)`, see
    /// [`effective_lower_bound`](crate::factorize::effective_lower_bound).
    pub varying_lower_bound: bool,
}

/// `max(u_round * n * max_i |A_ii|, 1e-300)` with `u_round = 2^-53`.
pub fn default_epsilon<T: Scalar>(a: &HermitianMatrix<T>) -> f64 {
    let max_diag = (0..a.n()).map(|i| a.diag(i).abs()).fold(0.0, f64::max);
    (0.5 * f64::EPSILON * a.n() as f64 * max_diag).max(1e-300)
}

impl BoundsConfig {
    /// Unconstrained diagonal, pivots in `[0, inf)`, explicit `epsilon`.
    pub fn unconstrained(n: usize, epsilon: f64) -> Self {
        BoundsConfig {
            diag_lower: vec![f64::NEG_INFINITY; n],
            diag_upper: vec![f64::INFINITY; n],
            pivot_lower: 0.0,
            pivot_upper: f64::INFINITY,
            epsilon,
            varying_lower_bound: false,
        }
    }

    /// Unconstrained configuration with epsilon scaled to `a`.
    pub fn for_matrix<T: Scalar>(a: &HermitianMatrix<T>) -> Self {
        Self::unconstrained(a.n(), default_epsilon(a))
    }

    pub fn with_diag_bounds(mut self, lower: Vec<f64>, upper: Vec<f64>) -> Self {
        self.diag_lower = lower;
        self.diag_upper = upper;
        self
    }

    pub fn with_uniform_diag_bounds(mut self, lower: f64, upper: f64) -> Self {
        let n = self.n();
        self.diag_lower = vec![lower; n];
        self.diag_upper = vec![upper; n];
        self
    }

    /// `x = y = value`, i.e. a prescribed diagonal.
    pub fn with_fixed_diagonal(self, value: f64) -> Self {
        self.with_uniform_diag_bounds(value, value)
    }

    pub fn with_pivot_bounds(mut self, lower: f64, upper: f64) -> Self {
        self.pivot_lower = lower;
        self.pivot_upper = upper;
        self
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_varying_lower_bound(mut self, on: bool) -> Self {
        self.varying_lower_bound = on;
        self
    }

    pub fn n(&self) -> usize {
        self.diag_lower.len()
    }
}

/// Checks the input requirements of the decomposition for a matrix of size `n`:
/// `max{x_i, l} <= min{y_i, u}`, and `|x_i|, |l| >= eps` or `|y_i|, |u| >= eps`.
///
/// NaN bounds fail the feasibility check.
pub fn validate_bounds(cfg: &BoundsConfig, n: usize) -> Result<&BoundsConfig> {
    for len in [cfg.diag_lower.len(), cfg.diag_upper.len()] {
        if len != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: len,
            });
        }
    }
    let eps = cfg.epsilon;
    if !(eps > 0.0) {
        return Err(Error::NonPositiveEpsilon);
    }
    let (l, u) = (cfg.pivot_lower, cfg.pivot_upper);
    for i in 0..n {
        let (x, y) = (cfg.diag_lower[i], cfg.diag_upper[i]);
        if !(x.max(l) <= y.min(u)) || x.is_nan() || y.is_nan() || l.is_nan() || u.is_nan() {
            return Err(Error::InfeasibleBounds(i));
        }
        let low_side = x.abs() >= eps && l.abs() >= eps;
        let high_side = y.abs() >= eps && u.abs() >= eps;
        if !(low_side || high_side) {
            return Err(Error::EpsilonWindowViolation(i));
        }
    }
    Ok(cfg)
}
