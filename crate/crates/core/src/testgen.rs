//! Deterministic random test matrices.
//!
//! Two families: correlation matrices with additive symmetric noise, and
//! symmetric matrices with a planted spectrum that has at least one negative
//! and one positive eigenvalue.
//!
//! Streams come from ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`).
//! Uniforms are `(next_u64 >> 11) * 2^-53`; normals use the cosine branch of
//! Box-Muller on two uniforms, `sqrt(-2 ln(1 - u1)) cos(2 pi u2)`. Matrices
//! are filled in row-major order.

use std::f64::consts::PI;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{HermitianMatrix, Matrix};

/// Reproducible stream of uniform and normal samples.
pub struct SampleStream {
    rng: ChaCha8Rng,
}

impl SampleStream {
    pub fn new(seed: u64) -> Self {
        SampleStream {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn normal(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.uniform() * n as f64) as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ScenarioKind {
    CorrelationPlusNoise { sigma: f64 },
    EigenvalueRange { lambda_min: f64, lambda_max: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScenarioSpec {
    pub kind: ScenarioKind,
    pub n: usize,
    pub seed: u64,
}

impl ScenarioSpec {
    pub fn correlation(n: usize, sigma: f64, seed: u64) -> Self {
        ScenarioSpec {
            kind: ScenarioKind::CorrelationPlusNoise { sigma },
            n,
            seed,
        }
    }

    pub fn eigenvalue_range(n: usize, lambda_min: f64, lambda_max: f64, seed: u64) -> Self {
        ScenarioSpec {
            kind: ScenarioKind::EigenvalueRange {
                lambda_min,
                lambda_max,
            },
            n,
            seed,
        }
    }

    /// The six standard scenarios: noise levels 0.1, 0.2, 0.3 on correlation
    /// matrices, and spectra in `[-1e4, 1e4]`, `[-1e4, 1]`, `[-1, 1e4]`.
    pub fn standard(n: usize, seed: u64) -> [ScenarioSpec; 6] {
        [
            Self::correlation(n, 0.1, seed),
            Self::correlation(n, 0.2, seed),
            Self::correlation(n, 0.3, seed),
            Self::eigenvalue_range(n, -1e4, 1e4, seed),
            Self::eigenvalue_range(n, -1e4, 1.0, seed),
            Self::eigenvalue_range(n, -1.0, 1e4, seed),
        ]
    }

    pub fn is_correlation(&self) -> bool {
        matches!(self.kind, ScenarioKind::CorrelationPlusNoise { .. })
    }

    /// Short label such as `corr-0.2` or `eig-[-10000,1]`.
    pub fn label(&self) -> String {
        match self.kind {
            ScenarioKind::CorrelationPlusNoise { sigma } => format!("corr-{sigma}"),
            ScenarioKind::EigenvalueRange {
                lambda_min,
                lambda_max,
            } => format!("eig-[{lambda_min},{lambda_max}]"),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidScenario(format!(
                "dimension must be at least 2, got {}",
                self.n
            )));
        }
        match self.kind {
            ScenarioKind::CorrelationPlusNoise { sigma } if !(sigma >= 0.0) => Err(
                Error::InvalidScenario(format!("sigma must be nonnegative, got {sigma}")),
            ),
            ScenarioKind::EigenvalueRange {
                lambda_min,
                lambda_max,
            } if !(lambda_min < 0.0 && lambda_max > 0.0) => {
                Err(Error::InvalidRange(lambda_min, lambda_max))
            }
            _ => Ok(()),
        }
    }
}

/// Random correlation matrix and its noisy version `(C, C + N)`.
///
/// `C` is the Gram matrix of `n` random unit vectors in dimension `n + 2`
/// with its diagonal set to exactly one. `N` has a zero diagonal and
/// independent `Normal(0, sigma^2)` strictly-lower entries, mirrored.
pub fn gen_correlation_with_base(
    spec: &ScenarioSpec,
) -> Result<(HermitianMatrix<f64>, HermitianMatrix<f64>)> {
    spec.validate()?;
    let ScenarioKind::CorrelationPlusNoise { sigma } = spec.kind else {
        return Err(Error::InvalidScenario(
            "expected a correlation-plus-noise scenario".into(),
        ));
    };
    let n = spec.n;
    let dim = n + 2;
    let mut s = SampleStream::new(spec.seed);
    let mut vecs = vec![0.0; n * dim];
    for v in vecs.chunks_mut(dim) {
        v.iter_mut().for_each(|x| *x = s.normal());
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
    }
    let mut c = Matrix::zeros(n);
    for i in 0..n {
        c[(i, i)] = 1.0;
        for j in 0..i {
            let dot: f64 = vecs[i * dim..(i + 1) * dim]
                .iter()
                .zip(&vecs[j * dim..(j + 1) * dim])
                .map(|(a, b)| a * b)
                .sum();
            c[(i, j)] = dot;
            c[(j, i)] = dot;
        }
    }
    let mut noisy = c.clone();
    for i in 0..n {
        for j in 0..i {
            let v = noisy[(i, j)] + sigma * s.normal();
            noisy[(i, j)] = v;
            noisy[(j, i)] = v;
        }
    }
    Ok((
        HermitianMatrix::symmetrize(c),
        HermitianMatrix::symmetrize(noisy),
    ))
}

pub fn gen_correlation_plus_noise(spec: &ScenarioSpec) -> Result<HermitianMatrix<f64>> {
    Ok(gen_correlation_with_base(spec)?.1)
}

/// Orthogonal factor of the QR factorization of an i.i.d. Gaussian matrix,
/// with the signs fixed so that `R` has a positive diagonal.
pub fn random_orthogonal(n: usize, s: &mut SampleStream) -> Matrix<f64> {
    let mut g = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = s.normal();
        }
    }
    // modified Gram-Schmidt on columns, two passes
    let mut q = Matrix::zeros(n);
    for j in 0..n {
        let mut col: Vec<f64> = (0..n).map(|i| g[(i, j)]).collect();
        for _ in 0..2 {
            for k in 0..j {
                let dot: f64 = (0..n).map(|i| q[(i, k)] * col[i]).sum();
                for (i, c) in col.iter_mut().enumerate() {
                    *c -= dot * q[(i, k)];
                }
            }
        }
        let norm = col.iter().map(|x| x * x).sum::<f64>().sqrt();
        for (i, c) in col.iter().enumerate() {
            q[(i, j)] = c / norm;
        }
    }
    q
}

/// `Q diag(lambda) Q^T` for a random orthogonal `Q` drawn from `s`.
pub fn symmetric_with_spectrum(lambda: &[f64], s: &mut SampleStream) -> HermitianMatrix<f64> {
    let n = lambda.len();
    let q = random_orthogonal(n, s);
    let mut out = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..=i {
            let v: f64 = (0..n).map(|k| q[(i, k)] * lambda[k] * q[(j, k)]).sum();
            out[(i, j)] = v;
            out[(j, i)] = v;
        }
    }
    HermitianMatrix::symmetrize(out)
}

/// Symmetric matrix with a planted spectrum, returned with that spectrum.
///
/// Eigenvalues are i.i.d. uniform on `[lambda_min, lambda_max]`. If none is
/// negative the smallest is redrawn from `[lambda_min, 0)`; if none is
/// positive the largest is redrawn from `(0, lambda_max]`.
pub fn gen_symmetric_eigrange_with_spectrum(
    spec: &ScenarioSpec,
) -> Result<(HermitianMatrix<f64>, Vec<f64>)> {
    spec.validate()?;
    let ScenarioKind::EigenvalueRange {
        lambda_min,
        lambda_max,
    } = spec.kind
    else {
        return Err(Error::InvalidScenario(
            "expected an eigenvalue-range scenario".into(),
        ));
    };
    let n = spec.n;
    let mut s = SampleStream::new(spec.seed);
    let mut lambda: Vec<f64> = (0..n).map(|_| s.uniform_in(lambda_min, lambda_max)).collect();
    let argext = |v: &[f64], less: bool| {
        (0..v.len())
            .reduce(|a, b| if (v[b] < v[a]) == less && v[b] != v[a] { b } else { a })
            .unwrap_or(0)
    };
    if !lambda.iter().any(|&l| l < 0.0) {
        let k = argext(&lambda, true);
        lambda[k] = lambda_min * (1.0 - s.uniform());
    }
    if !lambda.iter().any(|&l| l > 0.0) {
        let k = argext(&lambda, false);
        lambda[k] = lambda_max * (1.0 - s.uniform());
    }
    let a = symmetric_with_spectrum(&lambda, &mut s);
    Ok((a, lambda))
}

pub fn gen_symmetric_eigrange(spec: &ScenarioSpec) -> Result<HermitianMatrix<f64>> {
    Ok(gen_symmetric_eigrange_with_spectrum(spec)?.0)
}

/// Generates the matrix described by `spec`.
pub fn generate(spec: &ScenarioSpec) -> Result<HermitianMatrix<f64>> {
    match spec.kind {
        ScenarioKind::CorrelationPlusNoise { .. } => gen_correlation_plus_noise(spec),
        ScenarioKind::EigenvalueRange { .. } => gen_symmetric_eigrange(spec),
    }
}
