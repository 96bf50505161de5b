//! Output of the modified factorization and the pivot strategy selector.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::permutation::is_permutation;
use crate::scalar::Scalar;

/// Modified `LDL^H` factorization `(L, d, p, omega, delta)` of a permuted
/// Hermitian matrix.
///
/// `d` is indexed by elimination position, `omega` and `delta` by original
/// row index: row `p[i]` of the input was eliminated at step `i`, its
/// off-diagonal entries against earlier rows were scaled by `omega[p[i]]`
/// and its diagonal shifted by `delta[p[i]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModifiedDecomposition<T> {
    pub(crate) l: Matrix<T>,
    pub(crate) d: Vec<f64>,
    pub(crate) p: Vec<usize>,
    pub(crate) omega: Vec<f64>,
    pub(crate) delta: Vec<f64>,
}

impl<T: Scalar> ModifiedDecomposition<T> {
    /// Assembles a decomposition from parts, checking the structural
    /// invariants: unit lower triangular `L`, bijective `p`, matching
    /// lengths and `omega` in `[0, 1]`.
    pub fn from_parts(
        l: Matrix<T>,
        d: Vec<f64>,
        p: Vec<usize>,
        omega: Vec<f64>,
        delta: Vec<f64>,
    ) -> Result<Self> {
        let n = l.n();
        for len in [d.len(), p.len(), omega.len(), delta.len()] {
            if len != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: len,
                });
            }
        }
        if !is_permutation(&p) {
            return Err(Error::NotAPermutation);
        }
        for i in 0..n {
            if l[(i, i)] != T::one() {
                return Err(Error::NumericalBreakdown { row: i, col: i });
            }
            for j in i + 1..n {
                if l[(i, j)] != T::zero() {
                    return Err(Error::NumericalBreakdown { row: i, col: j });
                }
            }
        }
        if omega.iter().any(|w| !(0.0..=1.0).contains(w)) {
            return Err(Error::InfeasiblePivot);
        }
        Ok(ModifiedDecomposition {
            l,
            d,
            p,
            omega,
            delta,
        })
    }

    pub fn n(&self) -> usize {
        self.d.len()
    }

    /// Unit lower triangular factor.
    pub fn l(&self) -> &Matrix<T> {
        &self.l
    }

    /// Pivots, by elimination position.
    pub fn d(&self) -> &[f64] {
        &self.d
    }

    /// Elimination order: `p[i]` is the original index eliminated at step `i`.
    pub fn p(&self) -> &[usize] {
        &self.p
    }

    /// Row scalings, by original index.
    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    /// Diagonal shifts, by original index.
    pub fn delta(&self) -> &[f64] {
        &self.delta
    }

    pub fn d_min(&self) -> f64 {
        self.d.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn d_max(&self) -> f64 {
        self.d.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// How the next row and column are chosen in each elimination step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum PivotStrategy {
    /// Rows are eliminated in their given order.
    Natural,
    /// Smallest added error, ties to larger pivot, smaller scaling, lower index.
    MinimalError,
    /// Largest pivot, ties to smaller added error, smaller scaling, lower index.
    #[default]
    MaxD,
}

impl PivotStrategy {
    pub const ALL: [PivotStrategy; 3] = [
        PivotStrategy::Natural,
        PivotStrategy::MinimalError,
        PivotStrategy::MaxD,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PivotStrategy::Natural => "natural",
            PivotStrategy::MinimalError => "min-error",
            PivotStrategy::MaxD => "max-d",
        }
    }
}

impl fmt::Display for PivotStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown pivot strategy `{0}` (expected natural, min-error or max-d)")]
pub struct UnknownStrategy(pub String);

impl FromStr for PivotStrategy {
    type Err = UnknownStrategy;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "natural" => Ok(PivotStrategy::Natural),
            "min-error" | "minimal-error" => Ok(PivotStrategy::MinimalError),
            "max-d" => Ok(PivotStrategy::MaxD),
            other => Err(UnknownStrategy(other.to_string())),
        }
    }
}
