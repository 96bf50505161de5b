//! The approximation `B = P^T L D L^H P` represented by a decomposition,
//! plus solves and determinants through the factors.

use crate::decomposition::ModifiedDecomposition;
use crate::error::{Error, Result};
use crate::matrix::{HermitianMatrix, Matrix};
use crate::permutation::inverse_permutation;
use crate::scalar::Scalar;

/// Builds `B` from `A` and its decomposition in `O(n^2)` operations.
///
/// Off-diagonal entries are `A_ij` scaled by the `omega` of whichever of
/// `i`, `j` was eliminated later; diagonal entries are `A_ii + delta_i`.
/// Where the earlier of the two had a zero pivot but the later one a
/// nonzero scaling, the entry is taken from the factors instead.
pub fn assemble<T: Scalar>(
    a: &HermitianMatrix<T>,
    dec: &ModifiedDecomposition<T>,
) -> Result<HermitianMatrix<T>> {
    let n = a.n();
    if dec.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: dec.n(),
        });
    }
    let q = inverse_permutation(dec.p())?;
    let (l, d, omega) = (dec.l(), dec.d(), dec.omega());
    let mut b = Matrix::zeros(n);
    for i in 0..n {
        b[(i, i)] = T::from_real(a.diag(i) + dec.delta()[i]);
        for j in i + 1..n {
            let (first, last) = if q[i] > q[j] { (j, i) } else { (i, j) };
            let v = if d[q[first]] != 0.0 || omega[last] == 0.0 {
                a[(i, j)].scale(omega[last])
            } else {
                let (li, lj) = (l.row(q[i]), l.row(q[j]));
                (0..q[first]).fold(T::zero(), |acc, k| {
                    acc + (li[k] * lj[k].conj()).scale(d[k])
                })
            };
            b[(i, j)] = v;
            b[(j, i)] = v.conj();
        }
    }
    Ok(HermitianMatrix::symmetrize(b))
}

/// The literal product `P^T L D L^H P`, i.e. `B_ij = (L D L^H)_{q_i q_j}`.
pub fn compose_explicit<T: Scalar>(dec: &ModifiedDecomposition<T>) -> HermitianMatrix<T> {
    let n = dec.n();
    let l = dec.l();
    let d = dec.d();
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..=i {
            let (li, lj) = (l.row(i), l.row(j));
            let v = (0..=j).fold(T::zero(), |acc, k| acc + (li[k] * lj[k].conj()).scale(d[k]));
            m[(i, j)] = v;
            m[(j, i)] = v.conj();
        }
    }
    let p = dec.p();
    let mut out = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            out[(p[i], p[j])] = m[(i, j)];
        }
    }
    HermitianMatrix::symmetrize(out)
}

/// Solves `B z = rhs` with `B = P^T L D L^H P`.
pub fn solve_with_decomposition<T: Scalar>(
    dec: &ModifiedDecomposition<T>,
    rhs: &[T],
) -> Result<Vec<T>> {
    let n = dec.n();
    if rhs.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: rhs.len(),
        });
    }
    if let Some(k) = dec.d().iter().position(|&v| v == 0.0) {
        return Err(Error::SingularDecomposition(k));
    }
    let (l, d, p) = (dec.l(), dec.d(), dec.p());
    // w = P rhs, then L w' = w
    let mut w: Vec<T> = p.iter().map(|&pi| rhs[pi]).collect();
    for i in 0..n {
        let row = l.row(i);
        let mut s = w[i];
        for k in 0..i {
            s -= row[k] * w[k];
        }
        w[i] = s;
    }
    for (wi, &di) in w.iter_mut().zip(d) {
        *wi = wi.scale(1.0 / di);
    }
    for i in (0..n).rev() {
        let mut s = w[i];
        for k in i + 1..n {
            s -= l[(k, i)].conj() * w[k];
        }
        w[i] = s;
    }
    let mut z = vec![T::zero(); n];
    for (i, &pi) in p.iter().enumerate() {
        z[pi] = w[i];
    }
    Ok(z)
}

/// `det B = prod d_i`.
pub fn determinant<T: Scalar>(dec: &ModifiedDecomposition<T>) -> f64 {
    dec.d().iter().product()
}
