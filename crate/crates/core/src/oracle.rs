//! Reference computations independent of the factorization: a cyclic
//! Jacobi eigensolver, eigenvalue clipping (the Frobenius-nearest PSD
//! matrix), spectral condition numbers, and a brute-force search for the
//! per-step pivot choice.
//!
//! Real symmetric matrices only.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::matrix::{HermitianMatrix, Matrix};
use crate::pivot::{PivotChoice, PivotState};

pub const MAX_SWEEPS: usize = 30;

#[derive(Clone, Debug, PartialEq)]
pub struct EigenDecomposition {
    /// Eigenvalues, ascending.
    pub values: Vec<f64>,
    /// Orthogonal matrix whose columns are the matching eigenvectors.
    pub vectors: Matrix<f64>,
}

impl EigenDecomposition {
    /// `V diag(f(lambda)) V^T`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> HermitianMatrix<f64> {
        let n = self.values.len();
        let v = &self.vectors;
        let lam: Vec<f64> = self.values.iter().map(|&x| f(x)).collect();
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                let s: f64 = (0..n).map(|k| v[(i, k)] * lam[k] * v[(j, k)]).sum();
                out[(i, j)] = s;
                out[(j, i)] = s;
            }
        }
        HermitianMatrix::symmetrize(out)
    }
}

fn off_diagonal_norm(a: &Matrix<f64>) -> f64 {
    let n = a.n();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi rotations until the off-diagonal Frobenius mass is at most
/// `1e-14 ||A||_F`, or [`MAX_SWEEPS`] sweeps.
pub fn jacobi_eigendecomposition(a: &HermitianMatrix<f64>) -> Result<EigenDecomposition> {
    let n = a.n();
    let mut m = a.as_matrix().clone();
    let mut v = Matrix::<f64>::identity(n);
    let tol = 1e-14 * a.frobenius_norm();

    let mut converged = false;
    for _ in 0..=MAX_SWEEPS {
        if off_diagonal_norm(&m) <= tol {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m[(k, p)], m[(k, q)]);
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[(p, k)], m[(q, k)]);
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                m[(p, q)] = 0.0;
                m[(q, p)] = 0.0;
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].total_cmp(&m[(j, j)]));
    let values = order.iter().map(|&i| m[(i, i)]).collect();
    let mut vectors = Matrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for k in 0..n {
            vectors[(k, col)] = v[(k, src)];
        }
    }
    Ok(EigenDecomposition { values, vectors })
}

/// `V diag(max(lambda, 0)) V^T`, the PSD matrix nearest to `a` in the
/// Frobenius norm.
pub fn nearest_psd_eigclip(a: &HermitianMatrix<f64>) -> Result<HermitianMatrix<f64>> {
    Ok(jacobi_eigendecomposition(a)?.reconstruct_with(|l| l.max(0.0)))
}

/// Frobenius distance from `a` to the PSD cone, `sqrt(sum_{lambda < 0} lambda^2)`.
pub fn psd_distance(a: &HermitianMatrix<f64>) -> Result<f64> {
    let e = jacobi_eigendecomposition(a)?;
    Ok(e.values
        .iter()
        .filter(|&&l| l < 0.0)
        .map(|l| l * l)
        .sum::<f64>()
        .sqrt())
}

pub fn min_eigenvalue(a: &HermitianMatrix<f64>) -> Result<f64> {
    let e = jacobi_eigendecomposition(a)?;
    Ok(e.values.first().copied().unwrap_or(f64::NAN))
}

/// Largest eigenvalue in magnitude, i.e. `||A||_2`.
pub fn spectral_norm(a: &HermitianMatrix<f64>) -> Result<f64> {
    let e = jacobi_eigendecomposition(a)?;
    Ok(e.values.iter().map(|l| l.abs()).fold(0.0, f64::max))
}

/// `kappa_2` of a symmetric matrix: `max |lambda| / min |lambda|`.
pub fn condition_number_symmetric(a: &HermitianMatrix<f64>) -> Result<f64> {
    let e = jacobi_eigendecomposition(a)?;
    let (lo, hi) = e
        .values
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), l| (lo.min(l.abs()), hi.max(l.abs())));
    Ok(if lo == 0.0 { f64::INFINITY } else { hi / lo })
}

fn largest_singular_value(m: &Matrix<f64>) -> Result<f64> {
    let gram = HermitianMatrix::symmetrize(m.conj_transpose().matmul(m)?);
    let e = jacobi_eigendecomposition(&gram)?;
    Ok(e.values.last().copied().unwrap_or(0.0).max(0.0).sqrt())
}

/// `kappa_2(L) = ||L||_2 ||L^{-1}||_2` for unit lower triangular `L`.
pub fn condition_number_unit_lower(l: &Matrix<f64>) -> Result<f64> {
    let n = l.n();
    let mut inv = Matrix::<f64>::identity(n);
    // column c of the inverse by forward substitution
    for c in 0..n {
        for i in c + 1..n {
            let s: f64 = (c..i).map(|k| l[(i, k)] * inv[(k, c)]).sum();
            inv[(i, c)] = -s;
        }
    }
    Ok(largest_singular_value(l)? * largest_singular_value(&inv)?)
}

fn lexicographic(a: &PivotChoice, b: &PivotChoice) -> Ordering {
    a.f.total_cmp(&b.f)
        .then((-a.d).total_cmp(&-b.d))
        .then(a.omega.total_cmp(&b.omega))
}

/// Brute-force search for the per-step pivot choice.
///
/// Walks `grid_n` values of `omega` in `[0, 1]`; for each it samples
/// `grid_n` pivots across the feasible interval
/// `[max(l, eps, x - omega^2 alpha), min(u, y - omega^2 alpha)]` (capped at
/// `max(lo, gamma) + |gamma| + alpha + 1` when unbounded) and also evaluates
/// the interval point nearest to `gamma - omega^2 alpha`. The exact
/// candidates `(gamma - alpha, 1)` and, when `max(l, x) <= 0`, `(0, 0)` are
/// added.
#[allow(clippy::too_many_arguments)]
pub fn grid_minimal_change(
    x: f64,
    y: f64,
    l: f64,
    u: f64,
    eps: f64,
    st: PivotState,
    grid_n: usize,
) -> Result<PivotChoice> {
    if !(l.max(eps).max(x) <= u.min(y)) || !(eps > 0.0) || !(l >= 0.0) {
        return Err(Error::InfeasiblePivot);
    }
    let grid_n = grid_n.max(2);
    let mut best: Option<PivotChoice> = None;
    let mut consider = |d: f64, w: f64| {
        let r = d + w * w * st.alpha - st.gamma;
        let c = PivotChoice {
            d,
            omega: w,
            f: r * r + (w - 1.0) * (w - 1.0) * st.beta,
        };
        if best.is_none_or(|b| lexicographic(&c, &b) == Ordering::Less) {
            best = Some(c);
        }
    };

    let base = l.max(eps);
    // scalings where the feasible pivot interval opens or closes
    let mut omegas: Vec<f64> = (0..grid_n)
        .map(|wi| wi as f64 / (grid_n - 1) as f64)
        .collect();
    if st.alpha > 0.0 {
        for edge in [y - base, x - base, x - u, y - u] {
            let w = (edge / st.alpha).sqrt();
            if (0.0..=1.0).contains(&w) {
                omegas.push(w);
            }
        }
    }
    for w in omegas {
        let shift = w * w * st.alpha;
        let lo = base.max(x - shift);
        let mut hi = u.min(y - shift);
        if lo > hi {
            // breakpoints can land a rounding error outside the window
            if lo - hi > 1e-14 * (1.0 + lo.abs() + st.alpha) {
                continue;
            }
            hi = lo;
        }
        if !hi.is_finite() {
            hi = lo.max(st.gamma) + st.gamma.abs() + st.alpha + 1.0;
        }
        for ti in 0..grid_n {
            let d = lo + (hi - lo) * (ti as f64 / (grid_n - 1) as f64);
            consider(d, w);
        }
        consider((st.gamma - shift).max(lo).min(hi), w);
    }

    let exact = st.gamma - st.alpha;
    if exact >= base && exact <= u && exact + st.alpha >= x && exact + st.alpha <= y {
        consider(exact, 1.0);
    }
    if l.max(x) <= 0.0 {
        consider(0.0, 0.0);
    }
    best.ok_or(Error::InfeasiblePivot)
}
