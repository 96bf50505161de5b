use psd_approx::oracle::{jacobi_eigendecomposition, min_eigenvalue};
use psd_approx::testgen::{
    gen_correlation_plus_noise, gen_correlation_with_base, gen_symmetric_eigrange,
    gen_symmetric_eigrange_with_spectrum, ScenarioSpec,
};

#[test]
fn clean_correlation_is_psd_with_unit_diagonal() {
    for seed in 0..10 {
        let a = gen_correlation_plus_noise(&ScenarioSpec::correlation(12, 0.0, seed)).unwrap();
        assert!((0..12).all(|i| a.diag(i) == 1.0));
        assert!(min_eigenvalue(&a).unwrap() >= -1e-10);
    }
}

#[test]
fn identical_seeds_identical_output() {
    for spec in ScenarioSpec::standard(9, 5) {
        let a = psd_approx::testgen::generate(&spec).unwrap();
        let b = psd_approx::testgen::generate(&spec).unwrap();
        assert_eq!(a.as_matrix().as_slice(), b.as_matrix().as_slice());
    }
    let a = gen_correlation_plus_noise(&ScenarioSpec::correlation(9, 0.1, 1)).unwrap();
    let b = gen_correlation_plus_noise(&ScenarioSpec::correlation(9, 0.1, 2)).unwrap();
    assert_ne!(a, b);
}

#[test]
fn noise_mean_within_four_sigma() {
    let spec = ScenarioSpec::correlation(10, 0.3, 42);
    let (c, noisy) = gen_correlation_with_base(&spec).unwrap();
    let count = 45.0;
    let mut sum = 0.0;
    for i in 0..10 {
        assert_eq!(noisy.diag(i), 1.0);
        for j in 0..i {
            sum += noisy[(i, j)] - c[(i, j)];
        }
    }
    assert!((sum / count).abs() <= 4.0 * 0.3 / f64::sqrt(count));
}

#[test]
fn planted_spectrum_recovered() {
    for (seed, (lo, hi)) in [(-1e4, 1e4), (-1e4, 1.0), (-1.0, 1e4)].into_iter().enumerate() {
        let spec = ScenarioSpec::eigenvalue_range(15, lo, hi, seed as u64);
        let (a, mut lambda) = gen_symmetric_eigrange_with_spectrum(&spec).unwrap();
        lambda.sort_by(f64::total_cmp);
        let got = jacobi_eigendecomposition(&a).unwrap().values;
        let scale = lambda.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for (x, y) in got.iter().zip(&lambda) {
            assert!((x - y).abs() <= 1e-8 * scale, "{x} vs {y}");
        }
        for i in 0..15 {
            for j in 0..i {
                assert!((a[(i, j)] - a[(j, i)]).abs() <= 1e-14 * scale);
            }
        }
    }
}

#[test]
fn mixed_signs_for_skewed_range() {
    let a = gen_symmetric_eigrange(&ScenarioSpec::eigenvalue_range(10, -1.0, 1e4, 7)).unwrap();
    let v = jacobi_eigendecomposition(&a).unwrap().values;
    assert!(v[0] < 0.0 && v[9] > 0.0);
}
