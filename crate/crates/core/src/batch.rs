//! Independent work items mapped over a slice, on the rayon pool when the
//! `parallel` feature is enabled and on the calling thread otherwise.

use crate::bounds::BoundsConfig;
use crate::decomposition::{ModifiedDecomposition, PivotStrategy};
use crate::error::Result;
use crate::factorize::decompose;
use crate::matrix::HermitianMatrix;
use crate::scalar::Scalar;

pub fn map_sequential<I, O, F>(items: &[I], f: F) -> Vec<O>
where
    F: Fn(&I) -> O,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_parallel<I, O, F>(items: &[I], f: F) -> Vec<O>
where
    I: Sync,
    O: Send,
    F: Fn(&I) -> O + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

/// Order-preserving map; parallel when the `parallel` feature is on.
pub fn map<I, O, F>(items: &[I], f: F) -> Vec<O>
where
    I: Sync,
    O: Send,
    F: Fn(&I) -> O + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        map_parallel(items, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_sequential(items, f)
    }
}

/// Decomposes each `(matrix, bounds)` pair with the same strategy.
pub fn decompose_batch<T: Scalar>(
    jobs: &[(HermitianMatrix<T>, BoundsConfig)],
    strategy: PivotStrategy,
) -> Vec<Result<ModifiedDecomposition<T>>> {
    map(jobs, |(a, cfg)| decompose(a, cfg, strategy))
}

pub fn decompose_batch_sequential<T: Scalar>(
    jobs: &[(HermitianMatrix<T>, BoundsConfig)],
    strategy: PivotStrategy,
) -> Vec<Result<ModifiedDecomposition<T>>> {
    map_sequential(jobs, |(a, cfg)| decompose(a, cfg, strategy))
}
