//! Per-step choice of the pivot `d` and row scaling `omega`.
//!
//! Eliminating a row whose unmodified pivot would be `gamma - alpha` leaves
//! two knobs: the pivot `d` and the factor `omega` applied to the row's
//! off-diagonal part. The added squared Frobenius error of a choice is
//!
//! ```text
//! f(d, omega) = (d + omega^2 alpha - gamma)^2 + (omega - 1)^2 beta
//! ```
//!
//! and [`minimal_change`] minimizes it over the feasible set
//! `{ d in [max(l, eps), u], omega in [0, 1], d + omega^2 alpha in [x, y] }`,
//! extended by `(0, 0)` when `max(l, x) <= 0`.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Accumulated quantities for the row about to be eliminated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PivotState {
    /// `sum_k |L_jk|^2 d_k` over already eliminated columns.
    pub alpha: f64,
    /// `2 sum_m |A_{j, p_m}|^2` over already eliminated rows.
    pub beta: f64,
    /// Diagonal entry `A_jj`.
    pub gamma: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PivotChoice {
    pub d: f64,
    pub omega: f64,
    /// Objective value of `(d, omega)` for the state that produced it.
    pub f: f64,
}

impl PivotChoice {
    fn new(d: f64, omega: f64, st: &PivotState) -> Self {
        PivotChoice {
            d,
            omega,
            f: objective(d, omega, st),
        }
    }
}

/// `(d + omega^2 alpha - gamma)^2 + (omega - 1)^2 beta`.
#[inline]
pub fn objective(d: f64, omega: f64, st: &PivotState) -> f64 {
    let r = d + omega * omega * st.alpha - st.gamma;
    let s = omega - 1.0;
    r * r + s * s * st.beta
}

/// Real roots of `a3 t^3 + a1 t + a0`, ascending.
///
/// Uses the trigonometric form for three real roots and the hyperbolic
/// (Cardano) form for one, then polishes each root with Newton steps.
/// Roots closer than `1e-12 max(1, |t|)` are merged.
pub fn solve_cubic_real_roots(a3: f64, a1: f64, a0: f64) -> Result<Vec<f64>> {
    if a3 == 0.0 || !a3.is_finite() {
        return Err(Error::DegenerateCubic);
    }
    let p = a1 / a3;
    let q = a0 / a3;
    let mut roots: Vec<f64> = Vec::with_capacity(3);

    if p == 0.0 {
        roots.push((-q).cbrt());
    } else if q == 0.0 {
        roots.push(0.0);
        if p < 0.0 {
            let s = (-p).sqrt();
            roots.push(-s);
            roots.push(s);
        }
    } else {
        // 4p^3 + 27q^2 < 0 <=> three distinct real roots
        let disc = 4.0 * p * p * p + 27.0 * q * q;
        if disc < 0.0 {
            let m = 2.0 * (-p / 3.0).sqrt();
            let arg = ((3.0 * q / (2.0 * p)) * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
            let theta = arg.acos() / 3.0;
            for k in 0..3 {
                roots.push(m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos());
            }
        } else if disc > 0.0 {
            if p < 0.0 {
                let m = 2.0 * (-p / 3.0).sqrt();
                let arg = ((-3.0 * q.abs() / (2.0 * p)) * (-3.0 / p).sqrt()).max(1.0);
                roots.push(-q.signum() * m * (arg.acosh() / 3.0).cosh());
            } else {
                let m = 2.0 * (p / 3.0).sqrt();
                let arg = (3.0 * q / (2.0 * p)) * (3.0 / p).sqrt();
                roots.push(-m * (arg.asinh() / 3.0).sinh());
            }
        } else {
            roots.push(3.0 * q / p);
            roots.push(-1.5 * q / p);
        }
    }

    let eval = |t: f64| (a3 * t * t + a1) * t + a0;
    for t in roots.iter_mut() {
        for _ in 0..3 {
            let g = eval(*t);
            if g == 0.0 {
                break;
            }
            let dg = 3.0 * a3 * *t * *t + a1;
            if dg == 0.0 {
                break;
            }
            let next = *t - g / dg;
            if eval(next).abs() < g.abs() {
                *t = next;
            } else {
                break;
            }
        }
    }

    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|b, a| (*b - *a).abs() <= 1e-12 * a.abs().max(1.0));
    Ok(roots)
}

/// Stationary scalings `omega` of `f(d, .)` for fixed `d`, i.e. the roots of
/// `2 alpha^2 w^3 + (2 alpha (d - gamma) + beta) w - beta`.
fn stationary_omegas(d: f64, st: &PivotState) -> Vec<f64> {
    let a3 = 2.0 * st.alpha * st.alpha;
    let a1 = 2.0 * st.alpha * (d - st.gamma) + st.beta;
    let a0 = -st.beta;
    match solve_cubic_real_roots(a3, a1, a0) {
        Ok(r) => r,
        // alpha^2 underflowed: the equation is effectively linear
        Err(_) if a1 != 0.0 => vec![-a0 / a1],
        Err(_) => Vec::new(),
    }
}

fn lexicographic(a: &PivotChoice, b: &PivotChoice) -> Ordering {
    a.f.total_cmp(&b.f)
        .then((-a.d).total_cmp(&-b.d))
        .then(a.omega.total_cmp(&b.omega))
}

/// Chooses `(d, omega)` minimizing the added error `f` over the feasible set.
///
/// Ties are broken towards the larger `d`, then the smaller `omega`.
/// Bounds may be infinite (`x = -inf`, `y = u = +inf`).
pub fn minimal_change(
    x: f64,
    y: f64,
    l: f64,
    u: f64,
    eps: f64,
    st: PivotState,
) -> Result<PivotChoice> {
    if !(eps > 0.0) {
        return Err(Error::NonPositiveEpsilon);
    }
    if !(l >= 0.0) {
        return Err(Error::NegativePivotLowerBound(l));
    }
    if !(l.max(eps).max(x) <= u.min(y)) {
        return Err(Error::InfeasiblePivot);
    }
    let PivotState { alpha, gamma, .. } = st;

    let lo = l.max(eps).max(x - alpha);
    let hi = u.min(y - alpha);
    let unmodified = gamma - alpha;
    if lo <= unmodified && unmodified <= hi {
        return Ok(PivotChoice {
            d: unmodified,
            omega: 1.0,
            f: 0.0,
        });
    }

    let mut best: Option<PivotChoice> = None;
    let mut consider = |c: PivotChoice| {
        if best.is_none_or(|b| lexicographic(&c, &b) == Ordering::Less) {
            best = Some(c);
        }
    };

    if lo <= hi {
        consider(PivotChoice::new(unmodified.max(lo).min(hi), 1.0, &st));
    }

    if alpha != 0.0 {
        let d_low = l.max(eps);
        let mut ds = [f64::NAN; 2];
        if d_low >= x - alpha {
            ds[0] = d_low;
        }
        if u.is_finite() && u <= y {
            ds[1] = u;
        }
        for d in ds.into_iter().filter(|d| !d.is_nan()) {
            let w_min = ((x - d).max(0.0) / alpha).sqrt();
            let w_max = ((y - d) / alpha).sqrt();
            for w in stationary_omegas(d, &st) {
                let w = w.max(w_min).min(w_max).min(1.0);
                consider(PivotChoice::new(d, w, &st));
            }
        }
    }

    if l == 0.0 && x <= 0.0 && 2.0 * gamma <= eps {
        consider(PivotChoice::new(0.0, 0.0, &st));
    }

    best.ok_or(Error::InfeasiblePivot)
}
