//! Modified `LDL^H` factorization with per-step pivot modification.
//!
//! Each step picks the next row (according to a [`PivotStrategy`]), chooses
//! its pivot `d_i` and row scaling `omega` with [`minimal_change`], scales the
//! already computed part of that row of `L` by `omega`, records the implied
//! diagonal shift and then fills column `i` of `L` below the diagonal.

use std::cmp::Ordering;

use crate::bounds::{validate_bounds, BoundsConfig};
use crate::decomposition::{ModifiedDecomposition, PivotStrategy};
use crate::error::{Error, Result};
use crate::matrix::{HermitianMatrix, Matrix};
use crate::pivot::{minimal_change, PivotChoice, PivotState};
use crate::scalar::Scalar;

/// Per-index pivot lower bound `clamp(c_i / 2, l, u)` where
/// `c_i = clamp(A_ii, x_i, y_i)`.
pub fn effective_lower_bound<T: Scalar>(
    a: &HermitianMatrix<T>,
    cfg: &BoundsConfig,
    index: usize,
) -> f64 {
    let aii = a.diag(index);
    let (x, y) = (cfg.diag_lower[index], cfg.diag_upper[index]);
    let c = if aii < x {
        x
    } else if aii > y {
        y
    } else {
        aii
    };
    let half = 0.5 * c;
    if half < cfg.pivot_lower {
        cfg.pivot_lower
    } else if half > cfg.pivot_upper {
        cfg.pivot_upper
    } else {
        half
    }
}

/// State of an in-progress factorization.
///
/// `alpha` and `beta` are indexed by original row index. After step `i`,
/// `alpha[p[j]] = sum_{k <= i} |L_jk|^2 d_k` for every `j > i`, and after the
/// beta update of step `i`, `beta[p[k]] = 2 sum_{m < i} |A_{p_k p_m}|^2` for
/// `k >= i`.
pub struct FactorizeWorkspace<'a, T> {
    a: &'a HermitianMatrix<T>,
    cfg: &'a BoundsConfig,
    strategy: PivotStrategy,
    l: Matrix<T>,
    d: Vec<f64>,
    p: Vec<usize>,
    omega: Vec<f64>,
    delta: Vec<f64>,
    alpha: Vec<f64>,
    beta: Vec<f64>,
    step: usize,
}

impl<'a, T: Scalar> FactorizeWorkspace<'a, T> {
    pub fn new(
        a: &'a HermitianMatrix<T>,
        cfg: &'a BoundsConfig,
        strategy: PivotStrategy,
    ) -> Result<Self> {
        let n = a.n();
        validate_bounds(cfg, n)?;
        if !(cfg.pivot_lower >= 0.0) {
            return Err(Error::NegativePivotLowerBound(cfg.pivot_lower));
        }
        Ok(FactorizeWorkspace {
            a,
            cfg,
            strategy,
            l: Matrix::zeros(n),
            d: vec![0.0; n],
            p: (0..n).collect(),
            omega: vec![0.0; n],
            delta: vec![0.0; n],
            alpha: vec![0.0; n],
            beta: vec![0.0; n],
            step: 0,
        })
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    /// Number of completed elimination steps.
    pub fn steps_done(&self) -> usize {
        self.step
    }

    pub fn is_done(&self) -> bool {
        self.step == self.n()
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    pub fn permutation(&self) -> &[usize] {
        &self.p
    }

    pub fn pivots(&self) -> &[f64] {
        &self.d[..self.step]
    }

    /// Partially built factor; rows `>= steps_done()` are not yet scaled.
    pub fn factor(&self) -> &Matrix<T> {
        &self.l
    }

    /// Brings `beta` up to date for step `i`: zeroes it when `i == 0`, else
    /// adds `2 |A_{p_k, p_{i-1}}|^2` for every `k >= i`.
    pub fn update_beta(&mut self, i: usize) {
        let n = self.n();
        if i == 0 {
            self.beta.iter_mut().for_each(|b| *b = 0.0);
            return;
        }
        let prev = self.p[i - 1];
        for k in i..n {
            let pk = self.p[k];
            self.beta[pk] += 2.0 * self.a[(pk, prev)].abs_sqr();
        }
    }

    fn candidate(&self, k: usize) -> Result<PivotChoice> {
        let pk = self.p[k];
        let cfg = self.cfg;
        let lower = if cfg.varying_lower_bound {
            effective_lower_bound(self.a, cfg, pk)
        } else {
            cfg.pivot_lower
        };
        minimal_change(
            cfg.diag_lower[pk],
            cfg.diag_upper[pk],
            lower,
            cfg.pivot_upper,
            cfg.epsilon,
            PivotState {
                alpha: self.alpha[pk],
                beta: self.beta[pk],
                gamma: self.a.diag(pk),
            },
        )
    }

    /// Picks the position `j >= i` to eliminate next together with its pivot
    /// choice. Equal keys resolve to the smallest position.
    pub fn select_pivot(&self, i: usize) -> Result<(usize, PivotChoice)> {
        let key: fn(&PivotChoice, &PivotChoice) -> Ordering = match self.strategy {
            PivotStrategy::Natural => return Ok((i, self.candidate(i)?)),
            PivotStrategy::MaxD => |a, b| {
                (-a.d)
                    .total_cmp(&-b.d)
                    .then(a.f.total_cmp(&b.f))
                    .then(a.omega.total_cmp(&b.omega))
            },
            PivotStrategy::MinimalError => |a, b| {
                a.f.total_cmp(&b.f)
                    .then((-a.d).total_cmp(&-b.d))
                    .then(a.omega.total_cmp(&b.omega))
            },
        };
        let mut best = (i, self.candidate(i)?);
        for k in i + 1..self.n() {
            let c = self.candidate(k)?;
            if key(&c, &best.1) == Ordering::Less {
                best = (k, c);
            }
        }
        Ok(best)
    }

    /// Performs one elimination step. Returns `false` once all rows are done.
    pub fn step(&mut self) -> Result<bool> {
        let n = self.n();
        let i = self.step;
        if i == n {
            return Ok(false);
        }
        self.update_beta(i);
        let (j, choice) = self.select_pivot(i)?;
        self.p.swap(i, j);
        self.l.swap_row_prefix(i, j, i);

        let pi = self.p[i];
        let (d, w) = (choice.d, choice.omega);
        self.d[i] = d;
        self.omega[pi] = w;
        for v in &mut self.l.row_mut(i)[..i] {
            *v = v.scale(w);
        }
        self.delta[pi] = d + w * w * self.alpha[pi] - self.a.diag(pi);

        if d != 0.0 {
            let inv_d = 1.0 / d;
            for jj in i + 1..n {
                let pj = self.p[jj];
                let (row_i, row_j) = (self.l.row(i), self.l.row(jj));
                let mut s = self.a[(pj, pi)];
                for k in 0..i {
                    s -= (row_j[k] * row_i[k].conj()).scale(self.d[k]);
                }
                let lji = s.scale(inv_d);
                if !lji.is_finite() {
                    return Err(Error::NumericalBreakdown { row: jj, col: i });
                }
                self.l[(jj, i)] = lji;
                self.alpha[pj] += lji.abs_sqr() * d;
                if !self.alpha[pj].is_finite() {
                    return Err(Error::NumericalBreakdown { row: jj, col: i });
                }
            }
        } else {
            for jj in i + 1..n {
                self.l[(jj, i)] = T::zero();
            }
        }
        self.step += 1;
        Ok(true)
    }

    /// Runs the remaining steps and returns the decomposition.
    pub fn finish(mut self) -> Result<ModifiedDecomposition<T>> {
        while self.step()? {}
        let n = self.n();
        for i in 0..n {
            self.l[(i, i)] = T::one();
        }
        Ok(ModifiedDecomposition {
            l: self.l,
            d: self.d,
            p: self.p,
            omega: self.omega,
            delta: self.delta,
        })
    }
}

/// Computes the modified decomposition of `a` under `cfg`.
pub fn decompose<T: Scalar>(
    a: &HermitianMatrix<T>,
    cfg: &BoundsConfig,
    strategy: PivotStrategy,
) -> Result<ModifiedDecomposition<T>> {
    FactorizeWorkspace::new(a, cfg, strategy)?.finish()
}
