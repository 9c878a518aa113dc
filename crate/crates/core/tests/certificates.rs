use nlfront_core::certificates::floors::k3_constant;
use nlfront_core::certificates::residual::Frame;
use nlfront_core::certificates::zfn::{p_minus, p_minus_deriv, p_plus, p_plus_deriv, z1, z1_constant};
use nlfront_core::certificates::*;
use nlfront_core::traveling_wave::{fit_asymptotics, solve_profile};
use nlfront_core::{Bistable, ExteriorGrid, GridBox, Kernel, ObstacleSpec, WaveProfile};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

fn wave() -> &'static (WaveProfile, Bistable) {
    static W: OnceLock<(WaveProfile, Bistable)> = OnceLock::new();
    W.get_or_init(|| {
        let j1 = Kernel::new(2, 1.0, 2).unwrap().marginal_1d().unwrap();
        let f = Bistable::cubic(0.25, 1.0).unwrap();
        let p = solve_profile(&j1, &f, 40.0, 0.05, None).unwrap();
        (fit_asymptotics(&p, &j1, &f).unwrap(), f)
    })
}

fn two_front() -> TwoFront {
    let (p, f) = wave();
    let fl = shift_floors(p, f, 1.0).unwrap();
    let lam = p.asymptotics.as_ref().unwrap().lambda0;
    TwoFront::new(p.interpolator(), ShiftParams::new(fl.amplitude(), lam, p.c).unwrap())
}

#[test]
fn shift_identities() {
    let w = two_front();
    let s = w.params;
    let t_cap = s.t_cap();
    assert!(s.xi(-1e6).unwrap() <= 1e-12);
    assert!((s.c * t_cap + s.xi(t_cap).unwrap()).abs() < 1e-12);
    assert!((s.xi(t_cap).unwrap() - ((s.c + s.m) / s.c).ln() / s.lambda0).abs() < 1e-12);
    assert!(s.xi(t_cap + 1.0).is_err());
    let mut prev = f64::NEG_INFINITY;
    for i in 0..100 {
        let t = t_cap - 60.0 + 59.0 * i as f64 / 99.0;
        let xi = s.xi(t).unwrap();
        assert!(xi > prev && s.c * t + xi <= 0.0);
        prev = xi;
        let e = 1e-5;
        let fd = (s.xi(t + e).unwrap() - s.xi(t - e).unwrap()) / (2.0 * e);
        let ode = s.m * (s.lambda0 * (s.c * t + xi)).exp();
        assert!((fd - ode).abs() <= 1e-8, "t = {t}: {fd} vs {ode}");
        assert!((s.xi_dot(t).unwrap() - ode).abs() <= 1e-10 * ode.max(1.0));
    }
}

#[test]
fn two_front_values() {
    // a small amplitude keeps t = -10 inside the validity window
    let base = two_front();
    let w = TwoFront::new(base.profile.clone(), ShiftParams::new(0.05, base.params.lambda0, base.params.c).unwrap());
    let phi = &w.profile;
    let s = w.params;
    assert_eq!(w.w_minus([-1.0, 0.0], -10.0).unwrap(), 0.0);
    assert_eq!(w.w_minus([0.0, 0.0], -10.0).unwrap(), 0.0);
    let xi = s.xi(-10.0).unwrap();
    let direct = phi.eval(5.0 - 10.0 * s.c - xi) - phi.eval(-5.0 - 10.0 * s.c - xi);
    let v = w.w_minus([5.0, 0.0], -10.0).unwrap();
    assert!(v > 0.0 && v < 1.0 && (v - direct).abs() < 1e-15);
    let at0 = 2.0 * phi.eval(-10.0 * s.c + xi);
    assert!((w.w_plus([0.0, 0.0], -10.0).unwrap() - at0).abs() < 1e-15);
    assert!((w.w_plus([-3.0, 0.0], -10.0).unwrap() - at0).abs() < 1e-15);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let t_cap = s.t_cap();
    for _ in 0..10_000 {
        let x = [rng.random_range(-20.0..20.0), 0.0];
        let t = rng.random_range(t_cap - 80.0..t_cap);
        let (lo, hi) = (w.w_minus(x, t).unwrap(), w.w_plus(x, t).unwrap());
        assert!(hi >= lo - 1e-15 && hi <= 2.0, "{x:?} {t} {lo} {hi}");
    }
}

struct Zero;

impl Certificate for Zero {
    fn which(&self) -> Which {
        Which::WMinus
    }
    fn frame(&self, _t: f64) -> nlfront_core::Result<Frame<'_>> {
        Ok(Frame {
            value: Box::new(|_| 0.0),
            rate: Box::new(|_| 0.0),
        })
    }
}

fn open_grid() -> ExteriorGrid {
    let k = Kernel::new(2, 1.0, 2).unwrap();
    ExteriorGrid::build(GridBox::new_2d([-8.0, -2.0], [8.0, 2.0]), 0.1, ObstacleSpec::Empty, false, &k).unwrap()
}

#[test]
fn steady_state_has_zero_residual() {
    let (_, f) = wave();
    let r = certificate_residual(&Zero, &open_grid(), f, &[0.0, 1.0], 1e-3, None).unwrap();
    assert_eq!(r.extreme, 0.0);
    assert!(r.pass);
}

#[test]
fn zero_shift_amplitude_is_caught() {
    let (p, f) = wave();
    let lam = p.asymptotics.as_ref().unwrap().lambda0;
    // bypasses the constructor on purpose: M = 0 is the broken case
    let broken = TwoFront::new(p.interpolator(), ShiftParams { m: 0.0, lambda0: lam, c: p.c });
    let times = linspace(-20.0, 0.0, 4);
    let r = certificate_residual(&TwoFrontCert { w: &broken, which: Which::WMinus }, &open_grid(), f, &times, 1e-3, None).unwrap();
    assert!(!r.pass && r.extreme > 1e-3, "{}", r.summary());
    assert!(ShiftParams::new(0.0, lam, p.c).is_err());
}

#[test]
fn analytic_rate_matches_finite_differences() {
    let (_, f) = wave();
    let w = two_front();
    let t_cap = w.params.t_cap();
    let times = linspace(t_cap - 30.0, t_cap - 1.0, 3);
    let cert = TwoFrontCert { w: &w, which: Which::WPlus };
    let a = certificate_residual(&cert, &open_grid(), f, &times, 1e-3, None).unwrap();
    let b = certificate_residual(&cert, &open_grid(), f, &times, 1e-3, Some(1e-4)).unwrap();
    for (x, y) in a.samples.iter().zip(&b.samples) {
        assert!((x.inf - y.inf).abs() < 1e-6 && (x.sup - y.sup).abs() < 1e-6);
    }
}

#[test]
fn profile_constants_are_positive() {
    let (p, f) = wave();
    assert!(k3_constant(p).unwrap() > 0.0);
    let fl = shift_floors(p, f, 1.0).unwrap();
    assert!(fl.k4 < 0.5 * (f.fp1() - f.fp0()).abs());
    assert!(fl.values().iter().all(|v| v.is_finite() && *v > 0.0));
    assert_eq!(fl.amplitude(), 2.0 * fl.floor());
    let mid = mid_zone(p, f).unwrap();
    assert!(mid.tau0 > 0.0 && mid.sigma > 0.0 && mid.eta > 0.0);
}

#[test]
fn z_function_axioms() {
    for eta in [0.1, 0.3, 0.6] {
        let z = ZFunction::new(ZParams::new(eta, 0.1, 20.0).unwrap());
        assert_eq!(z.is_five_piece(), 20.0 >= 3.0 / eta);
        assert_eq!(z.value(0.0), 0.1);
        assert!(z.value(1.0) >= 0.05);
        let horizon = 20.0 + 200.0;
        for i in 0..10_000 {
            let t = horizon * i as f64 / 9_999.0;
            let v = z.value(t);
            assert!(v > 0.0 && v <= 0.1 + 1e-15);
            assert!(z.deriv(t) >= -eta * v - 1e-10, "eta {eta} t {t}");
            if t >= 20.0 {
                assert!(v >= z.k0() * (1.0 + t - 20.0).powf(-1.5) * (1.0 - 1e-12));
            }
        }
        for j in z.junctions() {
            let (dv, dd) = z.jump_at(j);
            assert!(dv.abs() < 1e-10 && dd.abs() < 1e-10, "eta {eta} at {j}: {dv} {dd}");
        }
        assert!(z.integral(1e4) < z.integral_bound(), "{eta} {} {}", z.integral(1e4), z.integral_bound());
        assert!(z.nu() > 0.0 && z.nu() <= eta);
    }
}

#[test]
fn z1_branches_meet() {
    for eta in [0.05f64, 0.2, 0.5] {
        let ts = 1.5 / eta - 1.0;
        let exp_branch = (-eta * ts).exp();
        let power_branch = z1_constant(eta) * (1.0 + ts).powf(-1.5);
        assert!((exp_branch - power_branch).abs() < 1e-14);
        assert!((z1(ts, eta) - (eta - 1.5).exp()).abs() < 1e-14);
    }
    for i in 0..20 {
        let eta = std::f64::consts::LN_2 * (i as f64 + 0.5) / 20.0;
        let z = ZFunction::new(ZParams::new(eta, 0.1, 0.0).unwrap());
        assert!(z.value(1.0) >= 0.05);
    }
}

#[test]
fn quadratic_pieces() {
    for eta in [0.1, 0.3, 0.6] {
        let nu = eta / 2.0;
        let lp = 1.0 / eta;
        assert_eq!(p_minus(-lp, eta).unwrap(), 1.0);
        assert!((p_minus(0.0, eta).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!(p_minus_deriv(-lp, eta).unwrap().abs() < 1e-15);
        assert!((p_minus_deriv(0.0, eta).unwrap() + 2.0 / 3.0 * eta).abs() < 1e-15);
        assert!((p_plus(0.0, eta, nu).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((p_plus_deriv(0.0, eta, nu).unwrap() + 2.0 / 3.0 * nu).abs() < 1e-15);
        assert!(p_plus_deriv(lp, eta, nu).unwrap().abs() < 1e-15);
        assert!(p_plus(lp, eta, nu).unwrap() >= 1.0 / 3.0);
        for i in 0..=1000 {
            let x = -lp + lp * i as f64 / 1000.0;
            let (p, d) = (p_minus(x, eta).unwrap(), p_minus_deriv(x, eta).unwrap());
            assert!(d <= 0.0 && d >= -eta * p - 1e-15);
            let y = lp * i as f64 / 1000.0;
            let (p, d) = (p_plus(y, eta, nu).unwrap(), p_plus_deriv(y, eta, nu).unwrap());
            assert!(d <= 1e-15 && d >= -eta * p - 1e-15);
        }
        assert!(p_minus(0.5, eta).is_err());
    }
}

fn large_time() -> LargeTime {
    let (p, _) = wave();
    let params = LargeTimeParams {
        beta: 1.0,
        alpha: 0.75,
        gamma: 2.0,
        beta_plus: 1.0,
        alpha_plus: 0.5,
        k_z: 3.0,
        t_eps: 4.0,
        eps: 0.05,
        tilt: TiltForm::Gaussian,
    };
    LargeTime::new(p.interpolator(), p.c, params, ZFunction::new(ZParams::new(0.05, 0.05, 0.0).unwrap())).unwrap()
}

#[test]
fn large_time_limits() {
    let u = large_time();
    let (p, _) = wave();
    let phi = p.interpolator();
    assert_eq!(u.big_z(0.0), 0.0);
    let mut prev = 0.0;
    for i in 1..200 {
        let z = u.big_z(i as f64 * 0.5);
        assert!(z >= prev);
        prev = z;
    }
    let t = 7.0;
    let far = u.u_minus([1.0, 1e4], t).unwrap();
    let limit = phi.eval(1.0 + p.c * (t - 1.0 + 4.0) - u.big_z(t)) - u.z.value(t);
    assert!((far - limit).abs() < 1e-12);
    for x1 in [-5.0, 0.0, 3.0] {
        for x2 in [0.0, 2.0] {
            assert!(u.u_minus([x1, x2], 1.0).unwrap() <= phi.eval(x1 + p.c * 4.0) - u.z.value(1.0) + 1e-15);
        }
    }
    assert!(u.u_minus([0.0, 0.0], 0.5).is_err());
    let mut bad = u.params;
    bad.alpha = 0.4;
    assert!(bad.validate().is_err());
}

#[test]
fn planar_pair_limits() {
    let (p, f) = wave();
    let pp = PlanarSqueezeParams::from_profile(p, f, None, 2.0).unwrap();
    let pair = PlanarPair::new(p.interpolator(), p.c, pp);
    let phi = p.interpolator();
    for x1 in [-3.0, 0.0, 2.5] {
        assert!((pair.lower(x1, 2.0).unwrap() - (phi.eval(x1 + 2.0 * p.c) - pp.eps)).abs() < 1e-15);
        let t = 2.0 + 4000.0 / pp.omega;
        let s = pp.shift_amplitude();
        assert!((pair.lower(x1, t).unwrap() - phi.eval(x1 + p.c * t - s)).abs() < 1e-10);
        assert!((pair.upper(x1, t).unwrap() - phi.eval(x1 + p.c * t + s)).abs() < 1e-10);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10_000 {
        let x1 = rng.random_range(-30.0..30.0);
        let t = rng.random_range(2.0..200.0);
        assert!(pair.upper(x1, t).unwrap() - pair.lower(x1, t).unwrap() >= 0.0);
    }
    assert!(pair.lower(0.0, 1.0).is_err());
    assert!(PlanarSqueezeParams::from_profile(p, f, Some(pp.eta), 0.0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn z_damping_holds_for_random_parameters(eta in 0.02f64..0.69, eps1 in 0.01f64..1.0, t1 in 0.0f64..60.0) {
        let z = ZFunction::new(ZParams::new(eta, eps1, t1).unwrap());
        prop_assert_eq!(z.value(0.0), eps1);
        for i in 0..2000 {
            let t = (t1 + 50.0) * i as f64 / 1999.0;
            let v = z.value(t);
            prop_assert!(v > 0.0 && v <= eps1 * (1.0 + 1e-12));
            prop_assert!(z.deriv(t) >= -eta * v - 1e-10);
        }
        for j in z.junctions() {
            let (dv, dd) = z.jump_at(j);
            prop_assert!(dv.abs() < 1e-10 && dd.abs() < 1e-10);
        }
    }

    #[test]
    fn two_front_order(x1 in -20.0f64..20.0, back in 0.0f64..80.0) {
        let w = two_front();
        let t = w.params.t_cap() - back;
        let (lo, hi) = (w.w_minus([x1, 0.0], t).unwrap(), w.w_plus([x1, 0.0], t).unwrap());
        prop_assert!(lo <= hi && lo >= 0.0 && hi <= 2.0);
    }
}
