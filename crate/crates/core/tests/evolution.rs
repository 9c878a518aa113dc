use nlfront_core::evolution::ordering_report;
use nlfront_core::{Bistable, Closure, Evolver, ExteriorGrid, Field, GridBox, Kernel, ObstacleSpec, Scheme};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn line() -> ExteriorGrid {
    let k = Kernel::new(1, 1.0, 2).unwrap();
    ExteriorGrid::build(GridBox::new_1d(-10.0, 10.0), 0.05, ObstacleSpec::Empty, false, &k).unwrap()
}

fn disc_square(n: usize) -> ExteriorGrid {
    let k = Kernel::new(2, 1.0, 2).unwrap();
    let h = 0.125;
    let half = 0.5 * n as f64 * h;
    ExteriorGrid::build(
        GridBox::new_2d([-half, -half], [half, half]),
        h,
        ObstacleSpec::Disc { center: [0.0, 0.0], radius: 0.5 },
        false,
        &k,
    )
    .unwrap()
}

fn cubic() -> Bistable {
    Bistable::cubic(0.25, 1.0).unwrap()
}

fn random_field(grid: &ExteriorGrid, rng: &mut ChaCha8Rng) -> Field {
    let v: Vec<f64> = (0..grid.len()).map(|_| rng.random_range(0.0..1.0)).collect();
    Field::from_values(grid, 0.0, v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn ordered_data_stay_ordered(seed in any::<u64>()) {
        let g = line();
        let ev = Evolver::new(&g, cubic(), Closure::Constant(0.0));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v0 = random_field(&g, &mut rng);
        let u0 = Field { values: v0.values.iter().map(|v| (v + rng.random_range(0.0..0.3)).min(1.0)).collect(), t: 0.0 };
        let dt = ev.max_dt();
        let u = ev.advance(&u0, 5.0, dt, Scheme::Heun, |_, _| {}).unwrap();
        let v = ev.advance(&v0, 5.0, dt, Scheme::Heun, |_, _| {}).unwrap();
        prop_assert_eq!(ordering_report(&g, &u, &v).unwrap().violations, 0);
    }

    #[test]
    fn unit_interval_is_invariant(seed in any::<u64>()) {
        let g = line();
        let ev = Evolver::new(&g, cubic(), Closure::Constant(1.0));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u0 = random_field(&g, &mut rng);
        let mut ok = true;
        ev.advance(&u0, 10.0, ev.max_dt(), Scheme::Heun, |_, u| {
            let (lo, hi) = u.min_max();
            ok &= lo >= -1e-10 && hi <= 1.0 + 1e-10;
        }).unwrap();
        prop_assert!(ok);
    }

    #[test]
    fn monotone_data_stay_monotone(seed in any::<u64>()) {
        let g = line();
        let ev = Evolver::new(&g, cubic(), Closure::Function(std::sync::Arc::new(|x, _| if x[0] < 0.0 { 0.0 } else { 1.0 })));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut incs: Vec<f64> = (0..g.len()).map(|_| rng.random_range(0.0..1.0)).collect();
        let total: f64 = incs.iter().sum();
        let mut acc = 0.0;
        for v in incs.iter_mut() {
            acc += *v / total;
            *v = acc.min(1.0);
        }
        let u0 = Field::from_values(&g, 0.0, incs).unwrap();
        let u = ev.advance(&u0, 5.0, ev.max_dt(), Scheme::Heun, |_, _| {}).unwrap();
        prop_assert!(u.values.windows(2).all(|w| w[1] >= w[0] - 1e-10));
    }
}

#[test]
fn distinct_ordered_data_separate_strictly() {
    let g = line();
    let ev = Evolver::new(&g, cubic(), Closure::Constant(0.0));
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let v0 = random_field(&g, &mut rng);
        let n = g.len();
        // the gap is seeded on at least three quarters of the line
        let start = rng.random_range(0..n / 4);
        let len = rng.random_range(3 * n / 4..=n - start);
        let u0 = Field {
            values: v0
                .values
                .iter()
                .enumerate()
                .map(|(k, v)| if k >= start && k < start + len { v + (1.0 - v) * rng.random_range(0.05..0.5) } else { *v })
                .collect(),
            t: 0.0,
        };
        let dt = ev.max_dt();
        let u = ev.advance(&u0, 1.0, dt, Scheme::Heun, |_, _| {}).unwrap();
        let v = ev.advance(&v0, 1.0, dt, Scheme::Heun, |_, _| {}).unwrap();
        let m = ordering_report(&g, &u, &v).unwrap().min_diff;
        assert!(m > 1e-14, "{m} start={start} len={len}");
    }
}

#[test]
fn steady_states_have_zero_rhs() {
    let g = disc_square(32);
    let ones = Field::from_fn(&g, 0.0, |_| 1.0);
    let r = Evolver::new(&g, cubic(), Closure::Constant(1.0)).rhs(&ones).unwrap();
    assert!(r.values.iter().filter(|v| !v.is_nan()).all(|v| v.abs() < 1e-12));
    let zeros = Field::from_fn(&g, 0.0, |_| 0.0);
    let ev = Evolver::new(&g, cubic(), Closure::Constant(0.0));
    assert!(ev.rhs(&zeros).unwrap().values.iter().filter(|v| !v.is_nan()).all(|v| *v == 0.0));
    let stepped = ev.step(&zeros, 0.05, Scheme::Rk4).unwrap();
    assert_eq!(stepped.sup_distance(&zeros), 0.0);
}

#[test]
fn fft_convolution_matches_direct_sum_with_obstacle() {
    let g = disc_square(32);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let u = random_field(&g, &mut rng);
    let ext = g.pad(&u.values, |x| 0.5 + 0.4 * (3.0 * x[0]).sin() * x[1].cos());
    let fast = g.convolve_padded(&ext);
    let direct = g.convolver().apply_direct(&ext);
    for (a, b) in fast.iter().zip(&direct) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn rk4_converges_at_fourth_order() {
    let g = line();
    let f = cubic();
    let ev = Evolver::new(&g, f, Closure::Constant(0.0));
    let u0 = Field::from_fn(&g, 0.0, |x| 0.5 * (1.0 + (x[0] / 2.0).tanh()) * (-(x[0] / 6.0).powi(2)).exp());
    let run = |dt: f64| ev.advance(&u0, 1.0, dt, Scheme::Rk4, |_, _| {}).unwrap();
    let (a, b, c) = (run(0.08), run(0.04), run(0.02));
    let ratio = a.sup_distance(&b) / b.sup_distance(&c);
    assert!(ratio >= 3.5 * 3.5, "{ratio}");
}

#[test]
fn restart_reproduces_a_single_run() {
    let g = disc_square(32);
    let ev = Evolver::new(&g, cubic(), Closure::Constant(0.5));
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let u0 = random_field(&g, &mut rng);
    let whole = ev.advance(&u0, 2.0, 0.05, Scheme::Heun, |_, _| {}).unwrap();
    let half = ev.advance(&u0, 1.0, 0.05, Scheme::Heun, |_, _| {}).unwrap();
    let again = ev.advance(&half, 2.0, 0.05, Scheme::Heun, |_, _| {}).unwrap();
    assert!(whole.sup_distance(&again) <= 1e-13);
    let traj = ev.solve_interval(&u0, 0.0, 0.05, 1, Scheme::Heun).unwrap();
    assert_eq!(traj.snapshots.len(), 1);
    assert_eq!(traj.snapshots[0].t, u0.t);
    assert_eq!(traj.snapshots[0].sup_distance(&u0), 0.0);
}

#[test]
fn picard_agrees_with_rk4() {
    let g = disc_square(32);
    let f = cubic();
    let ev = Evolver::new(&g, f.clone(), Closure::Constant(0.3));
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let u0 = random_field(&g, &mut rng);
    let p = ev.picard_solve(&u0, 0.2, 60).unwrap();
    let r = ev.advance(&u0, 0.2, 0.2 / 128.0, Scheme::Rk4, |_, _| {}).unwrap();
    assert!(p.field.sup_distance(&r) <= 1e-6, "{}", p.field.sup_distance(&r));
    assert!(p.contraction <= (2.0 + f.max_fprime()) * 0.2 + 0.05);
    let zero = Field::from_fn(&g, 0.0, |_| 0.0);
    let ez = Evolver::new(&g, f, Closure::Constant(0.0));
    let pz = ez.picard_solve(&zero, 0.2, 5).unwrap();
    assert!(pz.field.values.iter().filter(|v| !v.is_nan()).all(|v| *v == 0.0));
}

#[test]
fn oversized_steps_are_rejected() {
    let g = line();
    let ev = Evolver::new(&g, cubic(), Closure::Constant(0.0));
    let u0 = Field::from_fn(&g, 0.0, |_| 0.0);
    assert!(ev.step(&u0, 2.0 * ev.max_dt(), Scheme::Heun).is_err());
}
