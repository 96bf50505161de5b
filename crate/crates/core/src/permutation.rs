//! Permutation vectors (zero-based) and symmetric permutation of matrices.

use crate::error::{Error, Result};
use crate::matrix::{HermitianMatrix, Matrix};
use crate::scalar::Scalar;

pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &v in p {
        if v >= p.len() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// Returns `q` with `q[p[i]] = i` and `p[q[i]] = i`.
pub fn inverse_permutation(p: &[usize]) -> Result<Vec<usize>> {
    let n = p.len();
    let mut q = vec![usize::MAX; n];
    for (i, &pi) in p.iter().enumerate() {
        if pi >= n || q[pi] != usize::MAX {
            return Err(Error::NotAPermutation);
        }
        q[pi] = i;
    }
    Ok(q)
}

/// `(P A P^T)_{ij} = A_{p_i p_j}`.
pub fn apply_symmetric_permutation<T: Scalar>(
    a: &HermitianMatrix<T>,
    p: &[usize],
) -> Result<HermitianMatrix<T>> {
    let n = a.n();
    if p.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: p.len(),
        });
    }
    if !is_permutation(p) {
        return Err(Error::NotAPermutation);
    }
    let mut out = Matrix::zeros(n);
    for i in 0..n {
        let src = a.row(p[i]);
        let dst = out.row_mut(i);
        for j in 0..n {
            dst[j] = src[p[j]];
        }
    }
    Ok(HermitianMatrix::symmetrize(out))
}
