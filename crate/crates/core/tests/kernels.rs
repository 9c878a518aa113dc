use nlfront_core::Kernel;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Adaptive Simpson, used as an oracle independent of the fixed-panel rule in the crate.
fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            return left + right + (left + right - whole) / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    rec(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 50)
}

#[test]
fn one_dimensional_peak_value() {
    let k = Kernel::new(1, 1.0, 2).unwrap();
    assert!((k.eval(&[0.0]) - 15.0 / 16.0).abs() < 1e-10);
    assert_eq!(k.eval(&[2.0]), 0.0);
}

#[test]
fn marginal_peak_matches_monte_carlo() {
    let k = Kernel::new(2, 1.0, 2).unwrap();
    let j1 = k.marginal_1d().unwrap();
    // strip estimate of the density of x1 at 0
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (delta, n) = (0.005, 10_000_000usize);
    let mut s = 0.0;
    for _ in 0..n {
        let x = rng.random_range(-delta..delta);
        let y = rng.random_range(-1.0..1.0);
        s += k.eval(&[x, y]);
    }
    let mc = 2.0 * s / n as f64;
    assert!((j1.eval(0.0) - mc).abs() < 1e-3, "{} vs {mc}", j1.eval(0.0));
}

#[test]
fn exp_moment_matches_adaptive_quadrature() {
    let j = Kernel::new(1, 1.0, 2).unwrap().as_1d().unwrap();
    let oracle = adaptive(&|x: f64| j.eval(x) * x.exp(), -1.0, 1.0, 1e-13);
    let v = j.exp_moment(1.0);
    assert!(v > 1.0 && v < 1f64.cosh());
    assert!((v - oracle).abs() < 1e-9, "{v} vs {oracle}");
    assert!((j.exp_moment(0.0) - 1.0).abs() < 1e-10);
    assert!((j.exp_moment(0.7) - j.exp_moment(-0.7)).abs() < 1e-12);
}

#[test]
fn two_dimensional_mass_by_adaptive_quadrature() {
    let k = Kernel::new(2, 1.5, 3).unwrap();
    let radial = adaptive(&|r: f64| 2.0 * std::f64::consts::PI * r * k.eval_radial(r), 0.0, 1.5, 1e-13);
    assert!((radial - 1.0).abs() < 1e-10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kernels_are_nonnegative_symmetric_and_normalized(dim in 1usize..=2, radius in 0.5f64..3.0, p in 2u32..5, seed in any::<u64>()) {
        let k = Kernel::new(dim, radius, p).unwrap();
        prop_assert!((k.mass() - 1.0).abs() < 1e-10);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..10_000 {
            let x: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.2 * radius..1.2 * radius)).collect();
            let m: Vec<f64> = x.iter().map(|v| -v).collect();
            let v = k.eval(&x);
            prop_assert!(v >= 0.0);
            prop_assert!((v - k.eval(&m)).abs() <= 1e-14);
        }
    }

    #[test]
    fn exp_moment_is_convex(l1 in -3.0f64..3.0, gap in 0.01f64..3.0, radius in 0.5f64..2.0) {
        let j = Kernel::new(2, radius, 2).unwrap().marginal_1d().unwrap();
        let l2 = l1 + gap;
        let mid = j.exp_moment(0.5 * (l1 + l2));
        prop_assert!(mid <= 0.5 * (j.exp_moment(l1) + j.exp_moment(l2)) + 1e-12);
    }

    #[test]
    fn marginals_have_unit_mass_and_are_even(radius in 0.5f64..3.0, p in 2u32..5, x in 0.0f64..1.0) {
        let j = Kernel::new(2, radius, p).unwrap().marginal_1d().unwrap();
        prop_assert!((j.mass() - 1.0).abs() < 1e-8);
        prop_assert_eq!(j.eval(x * radius), j.eval(-x * radius));
    }
}
