use num_complex::Complex64;
use proptest::prelude::*;
use psd_approx::analyze::direct_error_norms;
use psd_approx::oracle::{jacobi_eigendecomposition, nearest_psd_eigclip};
use psd_approx::permutation::apply_symmetric_permutation;
use psd_approx::{
    assemble, compose_explicit, decompose, error_norms, solve_with_decomposition, BoundsConfig,
    HermitianMatrix, Matrix, PivotStrategy,
};

const INF: f64 = f64::INFINITY;

fn symmetric(n: usize, vals: &[f64]) -> HermitianMatrix<f64> {
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..=i {
            m[(i, j)] = vals[i * n + j];
            m[(j, i)] = vals[i * n + j];
        }
    }
    HermitianMatrix::new(m).unwrap()
}

fn sym_matrix(max_n: usize, scale: f64) -> impl Strategy<Value = HermitianMatrix<f64>> {
    (2..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(-scale..scale, n * n).prop_map(move |v| symmetric(n, &v))
    })
}

/// Gram matrix `G G^T + shift I`, positive definite for `shift > 0`.
fn pd_matrix(max_n: usize, shift: f64) -> impl Strategy<Value = HermitianMatrix<f64>> {
    (2..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(-2.0..2.0f64, n * n).prop_map(move |v| {
            let g = Matrix::from_row_major(n, v).unwrap();
            let mut m = g.matmul(&g.conj_transpose()).unwrap();
            for i in 0..n {
                m[(i, i)] += shift;
            }
            HermitianMatrix::symmetrize(m)
        })
    })
}

fn strategy() -> impl Strategy<Value = PivotStrategy> {
    prop_oneof![
        Just(PivotStrategy::Natural),
        Just(PivotStrategy::MinimalError),
        Just(PivotStrategy::MaxD)
    ]
}

/// Pivot bounds `(l, u)` and an optional fixed diagonal value.
fn bounds_choice() -> impl Strategy<Value = (f64, f64, Option<f64>, bool)> {
    (
        prop_oneof![Just(0.0), Just(1e-3), Just(0.5)],
        prop_oneof![Just(INF), Just(6.0)],
        prop_oneof![Just(None), Just(Some(1.0)), Just(Some(2.0))],
        any::<bool>(),
    )
}

fn config(a: &HermitianMatrix<f64>, b: (f64, f64, Option<f64>, bool)) -> BoundsConfig {
    let mut cfg = BoundsConfig::for_matrix(a)
        .with_pivot_bounds(b.0, b.1)
        .with_varying_lower_bound(b.3);
    if let Some(v) = b.2 {
        cfg = cfg.with_fixed_diagonal(v);
    }
    cfg
}

fn fro_diff(a: &HermitianMatrix<f64>, b: &HermitianMatrix<f64>) -> f64 {
    a.as_matrix().sub(b.as_matrix()).unwrap().frobenius_norm()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn assembled_matches_factors(a in sym_matrix(9, 10.0), s in strategy(), b in bounds_choice()) {
        let cfg = config(&a, b);
        let dec = decompose(&a, &cfg, s).unwrap();
        let diff = fro_diff(&assemble(&a, &dec).unwrap(), &compose_explicit(&dec));
        prop_assert!(diff <= 1e-10 * (1.0 + a.frobenius_norm()), "diff {diff}");
    }

    #[test]
    fn outputs_respect_bounds(a in sym_matrix(9, 10.0), s in strategy(), b in bounds_choice()) {
        let cfg = config(&a, b);
        let dec = decompose(&a, &cfg, s).unwrap();
        let bm = assemble(&a, &dec).unwrap();
        let scale = 1e-12 * (1.0 + a.max_abs());
        for i in 0..a.n() {
            prop_assert!(bm.diag(i) >= cfg.diag_lower[i] - scale);
            prop_assert!(bm.diag(i) <= cfg.diag_upper[i] + scale);
            prop_assert!((0.0..=1.0).contains(&dec.omega()[i]));
        }
        for &d in dec.d() {
            prop_assert!(d == 0.0 || d >= cfg.epsilon);
            prop_assert!(d >= cfg.pivot_lower && d <= cfg.pivot_upper);
        }
    }

    #[test]
    fn zero_pivot_clears_column(a in sym_matrix(8, 10.0), s in strategy()) {
        let cfg = BoundsConfig::for_matrix(&a);
        let dec = decompose(&a, &cfg, s).unwrap();
        let n = a.n();
        for i in 0..n {
            if dec.d()[i] == 0.0 {
                for j in i + 1..n {
                    prop_assert_eq!(dec.l()[(j, i)], 0.0);
                }
            }
        }
    }

    #[test]
    fn positive_lower_bound_preserves_zeros(a in sym_matrix(8, 5.0), mask in proptest::collection::vec(any::<bool>(), 64), s in strategy()) {
        let n = a.n();
        let mut m = a.into_matrix();
        for i in 0..n {
            for j in 0..i {
                if mask[i * 8 + j] {
                    m[(i, j)] = 0.0;
                    m[(j, i)] = 0.0;
                }
            }
        }
        let a = HermitianMatrix::new(m).unwrap();
        let cfg = BoundsConfig::for_matrix(&a).with_pivot_bounds(1e-4, INF);
        let dec = decompose(&a, &cfg, s).unwrap();
        let bm = assemble(&a, &dec).unwrap();
        for i in 0..n {
            for j in 0..n {
                if i != j && a[(i, j)] == 0.0 {
                    prop_assert_eq!(bm[(i, j)], 0.0);
                }
            }
        }
    }

    #[test]
    fn solve_inverts_approximation(a in sym_matrix(8, 5.0), rhs in proptest::collection::vec(-1.0..1.0f64, 8), s in strategy()) {
        let n = a.n();
        let cfg = BoundsConfig::for_matrix(&a).with_pivot_bounds(0.1, INF);
        let dec = decompose(&a, &cfg, s).unwrap();
        let bm = assemble(&a, &dec).unwrap();
        let z = solve_with_decomposition(&dec, &rhs[..n]).unwrap();
        let bz = bm.as_matrix().mul_vec(&z);
        let zmax = z.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        for (u, v) in bz.iter().zip(&rhs[..n]) {
            prop_assert!((u - v).abs() <= 1e-9 * zmax * (1.0 + bm.max_abs()));
        }
    }

    #[test]
    fn error_formula_matches_direct(a in sym_matrix(9, 10.0), s in strategy(), l in prop_oneof![Just(1e-8), Just(0.5)]) {
        let cfg = BoundsConfig::for_matrix(&a).with_pivot_bounds(l, INF);
        let dec = decompose(&a, &cfg, s).unwrap();
        let (fi, ff) = error_norms(&a, &dec).unwrap();
        let (di, df) = direct_error_norms(&a, &assemble(&a, &dec).unwrap()).unwrap();
        prop_assert!((fi - di).abs() <= 1e-10 * di.max(1e-300) + 1e-12 * a.max_abs());
        prop_assert!((ff - df).abs() <= 1e-10 * df.max(1e-300) + 1e-12 * a.max_abs());
    }

    #[test]
    fn feasible_pd_input_is_returned(a in pd_matrix(7, 1.0)) {
        let cfg = BoundsConfig::for_matrix(&a).with_pivot_bounds(1e-3, INF);
        for s in PivotStrategy::ALL {
            let dec = decompose(&a, &cfg, s).unwrap();
            prop_assert!(fro_diff(&assemble(&a, &dec).unwrap(), &a) <= 1e-12 * a.frobenius_norm());
        }
    }

    #[test]
    fn spectrum_invariant_under_permutation(a in sym_matrix(8, 10.0), seed in any::<u64>()) {
        let n = a.n();
        let mut p: Vec<usize> = (0..n).collect();
        let mut state = seed;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            p.swap(i, (state >> 33) as usize % (i + 1));
        }
        let ea = jacobi_eigendecomposition(&a).unwrap().values;
        let ep = jacobi_eigendecomposition(&apply_symmetric_permutation(&a, &p).unwrap()).unwrap().values;
        for (x, y) in ea.iter().zip(&ep) {
            prop_assert!((x - y).abs() <= 1e-10 * (1.0 + a.frobenius_norm()));
        }
    }

    #[test]
    fn clipping_beats_gram_matrices(a in sym_matrix(6, 3.0), g in proptest::collection::vec(-2.0..2.0f64, 36)) {
        let n = a.n();
        let clip = nearest_psd_eigclip(&a).unwrap();
        let gm = Matrix::from_row_major(n, g[..n * n].to_vec()).unwrap();
        let q = HermitianMatrix::symmetrize(gm.matmul(&gm.conj_transpose()).unwrap());
        prop_assert!(fro_diff(&clip, &a) <= fro_diff(&q, &a) + 1e-8);
    }
}

#[test]
fn eigensolver_residuals() {
    use psd_approx::testgen::SampleStream;
    let mut s = SampleStream::new(2024);
    for k in 0..200 {
        let n = 2 + k % 49;
        let vals: Vec<f64> = (0..n * n).map(|_| s.normal()).collect();
        let a = symmetric(n, &vals);
        let e = jacobi_eigendecomposition(&a).unwrap();
        let v = &e.vectors;
        let rec = e.reconstruct_with(|x| x);
        assert!(fro_diff(&rec, &a) <= 1e-10 * (1.0 + a.frobenius_norm()));
        let vtv = v.conj_transpose().matmul(v).unwrap();
        let orth = vtv.sub(&Matrix::identity(n)).unwrap().frobenius_norm();
        assert!(orth <= 1e-10 * n as f64);
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }
}

fn hermitian(n: usize, re: &[f64], im: &[f64]) -> HermitianMatrix<Complex64> {
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        m[(i, i)] = Complex64::new(re[i * n + i], 0.0);
        for j in 0..i {
            let v = Complex64::new(re[i * n + j], im[i * n + j]);
            m[(i, j)] = v;
            m[(j, i)] = v.conj();
        }
    }
    HermitianMatrix::new(m).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn complex_assembled_matches_factors(
        n in 2usize..8,
        re in proptest::collection::vec(-5.0..5.0f64, 64),
        im in proptest::collection::vec(-5.0..5.0f64, 64),
        s in strategy(),
        l in prop_oneof![Just(0.0), Just(1e-2)],
    ) {
        let a = hermitian(n, &re, &im);
        let cfg = BoundsConfig::for_matrix(&a).with_pivot_bounds(l, INF);
        let dec = decompose(&a, &cfg, s).unwrap();
        let diff = assemble(&a, &dec).unwrap().as_matrix().sub(compose_explicit(&dec).as_matrix()).unwrap().frobenius_norm();
        prop_assert!(diff <= 1e-10 * (1.0 + a.frobenius_norm()));
        prop_assert!(dec.d().iter().all(|&d| d >= 0.0));
    }
}
