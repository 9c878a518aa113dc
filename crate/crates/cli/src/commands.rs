//! Subcommand implementations.

use nlfront_core::certificates::large_time::tilt_constants;
use nlfront_core::certificates::*;
use nlfront_core::conv::Convolver;
use nlfront_core::evolution::ordering_report;
use nlfront_core::experiments::*;
use nlfront_core::field_io::csv_slice;
use nlfront_core::traveling_wave::{fit_asymptotics, solve_profile};
use nlfront_core::{
    Bistable, Closure, Evolver, ExteriorGrid, Field, FieldDump, GridBox, Kernel, ObstacleSpec, Scheme, WaveProfile,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{core_cfg, RunConfig};
use crate::failure::Failure;
use crate::output::Output;

/// Tolerance shared by the construction checks of `experiment entire`.
const CONSTRUCTION_TOL: f64 = nlfront_core::experiments::CONSTRUCTION_TOL;

/// Precondition and parameter errors point at `key`; anything else is a runtime failure.
fn setup_err(key: &str) -> impl Fn(nlfront_core::Error) -> Failure + '_ {
    move |e| match e {
        nlfront_core::Error::InvalidParameter { .. }
        | nlfront_core::Error::Precondition(_)
        | nlfront_core::Error::TimeStep { .. }
        | nlfront_core::Error::TouchesBoundary { .. } => core_cfg(key)(e),
        other => Failure::from(other),
    }
}

fn plan(lines: &[String]) {
    for l in lines {
        println!("plan: {l}");
    }
}

fn profile(cfg: &RunConfig, out: &mut Output) -> Result<(WaveProfile, Bistable), Failure> {
    let f = cfg.nonlinearity()?;
    let j1 = cfg.profile_kernel()?;
    let p = out
        .stage("profile", || solve_profile(&j1, &f, cfg.wave.z_max, cfg.wave.h, None))
        .map_err(setup_err("wave"))?;
    let p = out.stage("asymptotics", || fit_asymptotics(&p, &j1, &f))?;
    Ok((p, f))
}

fn check_dt(ev: &Evolver<'_>, dt: f64, key: &str) -> Result<(), Failure> {
    if dt > ev.max_dt() {
        return Err(Failure::Config {
            key: key.to_string(),
            msg: format!("{dt} exceeds the stability ceiling {}", ev.max_dt()),
        });
    }
    Ok(())
}

pub fn wave(cfg: &RunConfig, out: &mut Output, dry_run: bool) -> Result<(), Failure> {
    plan(&[format!(
        "solve the profile on [-{0}, {0}] with h = {1}, write profile.csv",
        cfg.wave.z_max, cfg.wave.h
    )]);
    if dry_run {
        return Ok(());
    }
    let (p, _) = profile(cfg, out)?;
    if cfg.output.csv() {
        out.text("profile.csv", &p.to_csv())?;
    }
    println!(
        "c={:?} residual={:e} newton_steps={} lambda={:?} mu={:?} monotone={}",
        p.c,
        p.residual,
        p.newton_steps,
        p.lambda,
        p.mu,
        p.is_strictly_monotone()
    );
    if !(p.residual <= cfg.wave.tolerance && p.is_strictly_monotone()) {
        return Err(Failure::Assertion(format!(
            "residual {:e} above wave.tolerance {:e} or profile not monotone",
            p.residual, cfg.wave.tolerance
        )));
    }
    Ok(())
}

pub fn simulate(cfg: &RunConfig, out: &mut Output, dry_run: bool) -> Result<(), Failure> {
    let e = &cfg.evolve;
    let grid = cfg.grid()?;
    let scheme = cfg.scheme()?;
    plan(&[format!(
        "evolve a planar front from x1 = {} over [{}, {}] with dt = {} ({}), {} cells, snapshot every {} steps",
        e.front_start,
        e.t0,
        e.t1,
        e.dt,
        scheme.name(),
        grid.len(),
        e.stride
    )]);
    if dry_run {
        return Ok(());
    }
    let (p, f) = profile(cfg, out)?;
    let phi = p.interpolator();
    let shift = -e.front_start - p.c * e.t0;
    let ev = Evolver::new(
        &grid,
        f.clone(),
        Closure::Planar {
            profile: phi.clone(),
            c: p.c,
            shift,
        },
    );
    check_dt(&ev, e.dt, "evolve.dt")?;
    let u0 = Field::from_fn(&grid, e.t0, |x| phi.eval(x[0] - e.front_start));
    let traj = out.stage("evolve", || ev.solve_interval(&u0, e.t1, e.dt, e.stride, scheme))?;
    let probe = grid.interior_probe(grid.kernel().radius());
    let mut csv = String::from("t,distance,front_axis,min,max\n");
    for (i, u) in traj.snapshots.iter().enumerate() {
        let d = if probe.is_empty() {
            f64::NAN
        } else {
            front_distance(u, &grid, &phi, p.c, shift, &probe)?
        };
        let x = front_position(u, &grid, f.theta0(), 0.0).unwrap_or(f64::NAN);
        let (lo, hi) = u.min_max();
        csv.push_str(&format!("{:?},{:?},{:?},{:?},{:?}\n", u.t, d, x, lo, hi));
        if cfg.output.bin() {
            out.dump(&format!("u_{i:05}.bin"), &FieldDump::from_grid(&grid, u.t, &u.values)?)?;
        }
    }
    let last = traj.snapshots.last().expect("at least the initial snapshot");
    if cfg.output.csv() {
        out.text("front.csv", &csv)?;
        out.text("slice_x2_0.csv", &csv_slice(&grid, &last.values, 0, 0.0))?;
    }
    let (lo, hi) = last.min_max();
    println!("t={:?} snapshots={} min={lo:?} max={hi:?}", last.t, traj.snapshots.len());
    if lo < -1e-10 || hi > 1.0 + 1e-10 {
        return Err(Failure::Assertion(format!("solution left [0, 1]: min {lo:e} max {hi:e}")));
    }
    Ok(())
}

fn sample_times(cfg: &RunConfig, a: f64, b: f64) -> Result<Vec<f64>, Failure> {
    let n = cfg.certify.samples;
    if !(b > a) {
        return Err(Failure::Config {
            key: "certify.t_end".into(),
            msg: format!("scan window [{a}, {b}] is empty"),
        });
    }
    if cfg.certify.spacing == "geometric" {
        if !(a > 0.0) {
            return Err(Failure::Config {
                key: "certify.t_start".into(),
                msg: "geometric spacing needs a positive start".into(),
            });
        }
        return Ok(geometric(a, b, n));
    }
    Ok(linspace(a, b, n))
}

fn geometric(a: f64, b: f64, n: usize) -> Vec<f64> {
    let n = n.max(1);
    (0..=n).map(|i| a * (b / a).powf(i as f64 / n as f64)).collect()
}

pub fn certify(cfg: &RunConfig, out: &mut Output, dry_run: bool) -> Result<(), Failure> {
    let which: Vec<Which> = cfg
        .certify
        .which
        .iter()
        .map(|w| w.parse().map_err(core_cfg("certify.which")))
        .collect::<Result<_, _>>()?;
    let grid = cfg.grid()?;
    plan(&[format!(
        "scan {} on {} cells with tolerance {:e}",
        cfg.certify.which.join(", "),
        grid.len(),
        cfg.certify.tolerance
    )]);
    if dry_run {
        return Ok(());
    }
    let (p, f) = profile(cfg, out)?;
    let c = &cfg.certify;
    let mut failed = Vec::new();
    let mut two_front: Option<TwoFront> = None;
    let mut large_time: Option<LargeTime> = None;
    for w in which {
        let report = match w {
            Which::WMinus | Which::WPlus => {
                if two_front.is_none() {
                    let fl = shift_floors(&p, &f, grid.kernel().radius())?;
                    let lam = p.asymptotics.as_ref().expect("fitted").lambda0;
                    two_front = Some(TwoFront::new(p.interpolator(), ShiftParams::new(fl.amplitude(), lam, p.c)?));
                }
                let tf = two_front.as_ref().expect("built above");
                let t_cap = tf.params.t_cap();
                let t_end = c.t_end.unwrap_or(t_cap);
                if t_end > t_cap {
                    return Err(Failure::Config {
                        key: "certify.t_end".into(),
                        msg: format!("{t_end} exceeds the validity limit T1 = {t_cap}"),
                    });
                }
                let times = sample_times(cfg, c.t_start.unwrap_or(-40.0), t_end)?;
                let cert = TwoFrontCert { w: tf, which: w };
                out.stage(w.name(), || certificate_residual(&cert, &grid, &f, &times, c.tolerance, c.fd_step))?
            }
            Which::UMinus | Which::UPlus => {
                let (a, b) = (c.t_start.unwrap_or(1.0), c.t_end.unwrap_or(50.0));
                if large_time.is_none() {
                    let z = ZFunction::new(ZParams::new(c.eta_z, c.eps1, c.z_t1).map_err(core_cfg("zfn"))?);
                    let mut params = cfg.large_time_params(1.0)?;
                    let tilt_times = geometric(a.max(1.0), b, c.tilt_samples.max(1) - 1);
                    let tilt = out.stage("tilt_constants", || tilt_constants(&grid, &p.interpolator(), &params, &tilt_times));
                    let mid = mid_zone(&p, &f)?;
                    params.k_z = DriftFloors::compute(&mid, &tilt, &params, &z).map_err(core_cfg("zfn"))?.gain();
                    println!(
                        "tilt c_prime={:?} c_k={:?} m_prime={:?} k_z={:?}",
                        tilt.c_prime, tilt.c_k, tilt.m_prime, params.k_z
                    );
                    large_time = Some(LargeTime::new(p.interpolator(), p.c, params, z).map_err(core_cfg("certify"))?);
                }
                let times = sample_times(cfg, a, b)?;
                let cert = LargeTimeCert {
                    u: large_time.as_ref().expect("built above"),
                    which: w,
                };
                out.stage(w.name(), || certificate_residual(&cert, &grid, &f, &times, c.tolerance, c.fd_step))
                    .map_err(setup_err("certify.t_start"))?
            }
            Which::PlanarLower | Which::PlanarUpper => {
                let pp = PlanarSqueezeParams::from_profile(&p, &f, c.planar_eps, c.planar_t0)
                    .map_err(setup_err("certify.planar_eps"))?;
                let pair = PlanarPair::new(p.interpolator(), p.c, pp);
                let times = sample_times(
                    cfg,
                    c.t_start.unwrap_or(c.planar_t0),
                    c.t_end.unwrap_or(c.planar_t0 + 50.0),
                )?;
                let cert = PlanarCert { pair: &pair, which: w };
                out.stage(w.name(), || certificate_residual(&cert, &grid, &f, &times, c.tolerance, c.fd_step))
                    .map_err(setup_err("certify.t_start"))?
            }
        };
        println!("{}", report.summary());
        if cfg.output.csv() {
            out.text(&format!("certify_{}.csv", w.name()), &report.to_csv())?;
        }
        if !report.pass {
            failed.push(report.summary());
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Assertion(failed.join("; ")))
    }
}

fn recovery_config(cfg: &RunConfig) -> Result<RecoveryConfig, Failure> {
    let x = &cfg.experiment;
    Ok(RecoveryConfig {
        front_start: cfg.evolve.front_start,
        t_end: x.t_end,
        dt: cfg.evolve.dt,
        scheme: cfg.scheme()?,
        sample_every: x.sample_every,
        eps: x.eps,
        keps_radius: x.keps_radius,
        offaxis: x.offaxis,
        sandwich: None,
    })
}

pub fn experiment(cfg: &RunConfig, out: &mut Output, dry_run: bool) -> Result<(), Failure> {
    let x = &cfg.experiment;
    let grid = cfg.grid()?;
    let scheme = cfg.scheme()?;
    plan(&[format!(
        "experiment `{}` on {} cells, dt = {} ({})",
        x.kind,
        grid.len(),
        cfg.evolve.dt,
        scheme.name()
    )]);
    if dry_run {
        return Ok(());
    }
    let (p, f) = profile(cfg, out)?;
    let phi = p.interpolator();
    match x.kind.as_str() {
        "entire" => {
            let fl = shift_floors(&p, &f, grid.kernel().radius())?;
            let lam = p.asymptotics.as_ref().expect("fitted").lambda0;
            let w = TwoFront::new(phi.clone(), ShiftParams::new(fl.amplitude(), lam, p.c)?);
            let ecfg = EntireConfig {
                n_list: x.n_list.clone(),
                eval_times: x.eval_times.clone(),
                dt: cfg.evolve.dt,
                scheme,
                t1: w.params.t_cap(),
                lipschitz_window: x.lipschitz_window,
                phi_low: x.phi_low,
            };
            let e = out
                .stage("entire", || construct_entire(&grid, &f, &w, &ecfg))
                .map_err(setup_err("experiment"))?;
            let mut cauchy = String::from("t,n_lo,n_hi,sup_diff\n");
            for (i, t) in e.eval_times.iter().enumerate() {
                for (j, d) in e.cauchy[i].iter().enumerate() {
                    cauchy.push_str(&format!("{t:?},{:?},{:?},{d:?}\n", x.n_list[j], x.n_list[j + 1]));
                }
            }
            let mut runs = String::from(
                "n,sandwich_margin,sandwich_violations,sandwich_checks,ut_min,midzone_ut_min,lipschitz_growth,start_distance\n",
            );
            for r in &e.runs {
                runs.push_str(&format!(
                    "{:?},{:?},{},{},{:?},{:?},{:?},{:?}\n",
                    r.n,
                    r.sandwich_margin,
                    r.sandwich_violations,
                    r.sandwich_checks,
                    r.ut_min,
                    r.midzone_ut_min,
                    r.lipschitz_growth(),
                    r.start_distance
                ));
            }
            if cfg.output.csv() {
                out.text("entire_cauchy.csv", &cauchy)?;
                out.text("entire_runs.csv", &runs)?;
            }
            if cfg.output.bin() {
                for (i, u) in e.limit().iter().enumerate() {
                    out.dump(&format!("entire_{i:02}.bin"), &FieldDump::from_grid(&grid, u.t, &u.values)?)?;
                }
            }
            let violations: usize = e.runs.iter().map(|r| r.sandwich_violations).sum();
            let ut_min = e.runs.iter().map(|r| r.ut_min).fold(f64::INFINITY, f64::min);
            let halving = match e.eval_times.iter().position(|&t| t == 0.0) {
                Some(i) => e.cauchy[i].windows(2).all(|d| d[0] >= 2.0 * d[1]),
                None => true,
            };
            println!(
                "monotone_min={:e} sandwich_violations={violations} ut_min={ut_min:e} error_estimate={:?}",
                e.monotone_min,
                e.error_estimate()
            );
            if e.monotone_min < -CONSTRUCTION_TOL || violations > 0 || ut_min < -CONSTRUCTION_TOL || !halving {
                return Err(Failure::Assertion(format!(
                    "construction checks failed: monotone_min {:e}, sandwich violations {violations}, ut_min {ut_min:e}, cauchy halving {halving}",
                    e.monotone_min
                )));
            }
        }
        "recover" => {
            let rc = recovery_config(cfg)?;
            let d = out
                .stage("recover", || recovery_experiment(&grid, &f, &phi, p.c, &rc, false))
                .map_err(setup_err("evolve.front_start"))?;
            if cfg.output.csv() {
                out.text("recovery.csv", &d.to_csv())?;
            }
            if let (true, Some(u)) = (cfg.output.bin(), &d.last) {
                out.dump("recovery_final.bin", &FieldDump::from_grid(&grid, u.t, &u.values)?)?;
            }
            println!(
                "peak={:?} final={:?} t_eps={:?} settles={}",
                d.peak(),
                d.final_distance(),
                d.t_eps,
                d.settles(x.peak_threshold, 1.5 * x.peak_threshold)
            );
            if !(d.peak() > x.peak_threshold && d.final_distance() < x.decay_threshold) {
                return Err(Failure::Assertion(format!(
                    "front distance peak {:.4} (needs > {}) and D(t_end) {:.4} (needs < {})",
                    d.peak(),
                    x.peak_threshold,
                    d.final_distance(),
                    x.decay_threshold
                )));
            }
        }
        "farfield" => {
            let rc = recovery_config(cfg)?;
            let shift = -rc.front_start;
            let empty = cfg.grid_with(ObstacleSpec::Empty, None, None)?;
            let mut reports = Vec::new();
            for (label, g) in [("obstacle", &grid), ("empty", &empty)] {
                let d = out
                    .stage(label, || recovery_experiment(g, &f, &phi, p.c, &rc, false))
                    .map_err(setup_err("evolve.front_start"))?;
                let last = d.last.expect("final field");
                reports.push(
                    farfield_translate_check(&last, g, &phi, p.c, shift, &x.offsets, x.half_width)
                        .map_err(setup_err("experiment.offsets"))?,
                );
            }
            let mut csv = String::from("offset,distance,empty_floor\n");
            for i in 0..x.offsets.len() {
                csv.push_str(&format!(
                    "{:?},{:?},{:?}\n",
                    x.offsets[i], reports[0].distances[i], reports[1].distances[i]
                ));
            }
            if cfg.output.csv() {
                out.text("farfield.csv", &csv)?;
            }
            let far = reports[0].distances.last().copied().unwrap_or(f64::NAN);
            let floor = reports[1].distances.last().copied().unwrap_or(f64::NAN);
            println!("distances={:?} floor={floor:e}", reports[0].distances);
            if !(reports[0].strictly_decreasing && far <= 2.0 * floor) {
                return Err(Failure::Assertion(format!(
                    "distances {:?} not strictly decreasing or last above twice the floor {floor:e}",
                    reports[0].distances
                )));
            }
        }
        "liouville" => {
            let r = out
                .stage("liouville", || {
                    stationary_liouville(&grid, &f, x.dip, x.dip_width, x.t_end, cfg.evolve.dt, scheme)
                })
                .map_err(setup_err("nonlinearity"))?;
            if cfg.output.csv() {
                out.text(
                    "liouville.csv",
                    &format!("t,sup_dev,rhs_sup\n{:?},{:?},{:?}\n", r.field.t, r.sup_dev, r.rhs_sup),
                )?;
            }
            if cfg.output.bin() {
                out.dump("liouville_final.bin", &FieldDump::from_grid(&grid, r.field.t, &r.field.values)?)?;
            }
            println!("sup_dev={:e} rhs_sup={:e}", r.sup_dev, r.rhs_sup);
            if !r.converged {
                return Err(Failure::Assertion(format!(
                    "no convergence to 1: sup|u-1| = {:e}, rhs = {:e}",
                    r.sup_dev, r.rhs_sup
                )));
            }
        }
        other => {
            return Err(Failure::Config {
                key: "experiment.kind".into(),
                msg: format!("unknown experiment `{other}`"),
            })
        }
    }
    Ok(())
}

/// Property summary of `z` sampled on `[0, horizon]`.
pub struct ZfnSummary {
    pub csv: String,
    pub lines: Vec<String>,
    pub pass: bool,
}

pub fn zfn(eta: f64, eps1: f64, t1: f64, horizon: Option<f64>, samples: usize) -> Result<ZfnSummary, Failure> {
    let z = ZFunction::new(ZParams::new(eta, eps1, t1).map_err(core_cfg("zfn"))?);
    let horizon = horizon.unwrap_or(t1 + 100.0);
    if !(horizon > 0.0) || samples < 2 {
        return Err(Failure::Config {
            key: "zfn.samples".into(),
            msg: "need a positive horizon and at least two samples".into(),
        });
    }
    let mut csv = String::from("t,z,dz\n");
    let mut damping = f64::INFINITY;
    let mut tail = true;
    for i in 0..samples {
        let t = horizon * i as f64 / (samples - 1) as f64;
        let (v, d) = (z.value(t), z.deriv(t));
        csv.push_str(&format!("{t:?},{v:?},{d:?}\n"));
        damping = damping.min(d + eta * v);
        if t >= t1 {
            tail &= v >= z.k0() * (1.0 + t - t1).powf(-1.5) * (1.0 - 1e-12);
        }
    }
    let jump = z
        .junctions()
        .iter()
        .map(|&j| {
            let (a, b) = z.jump_at(j);
            a.abs().max(b.abs())
        })
        .fold(0.0, f64::max);
    let checks = [
        ("damping", damping >= -1e-10, format!("min(z' + eta z) = {damping:e}")),
        ("initial", z.value(0.0) == eps1, format!("z(0) = {:?}", z.value(0.0))),
        ("unit_time", z.value(1.0) >= 0.5 * eps1, format!("z(1) = {:?}", z.value(1.0))),
        ("tail", tail, format!("K0 = {:?}", z.k0())),
        ("junctions", jump <= 1e-10, format!("max jump = {jump:e}")),
        (
            "integral",
            z.integral_bound().is_finite(),
            format!("int z <= {:?}", z.integral_bound()),
        ),
    ];
    let mut lines = vec![format!(
        "pieces={} nu={:?}",
        if z.is_five_piece() { 5 } else { 1 },
        z.nu()
    )];
    let mut pass = true;
    for (name, ok, detail) in checks {
        pass &= ok;
        lines.push(format!("{name} {} {detail}", if ok { "ok" } else { "FAIL" }));
    }
    Ok(ZfnSummary { csv, lines, pass })
}

/// Fast internal consistency checks.
pub fn selfcheck(seed: u64, out: &mut Output) -> Result<(), Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut results: Vec<(&str, bool, String)> = Vec::new();

    let stencil: Vec<f64> = (0..81).map(|_| rng.random_range(0.0..1.0)).collect();
    let conv = Convolver::new(2, 24, 17, 4, stencil);
    let (ex, ey) = conv.padded_shape();
    let data: Vec<f64> = (0..ex * ey).map(|_| rng.random_range(-1.0..1.0)).collect();
    let gap = conv
        .apply(&data)
        .iter()
        .zip(conv.apply_direct(&data))
        .fold(0.0, |m: f64, (a, b)| m.max((a - b).abs()));
    results.push(("fft_vs_direct", gap <= 1e-12, format!("{gap:e}")));

    let k1 = Kernel::new(1, 1.0, 2)?;
    let j1 = k1.as_1d()?;
    let f = Bistable::cubic(0.25, 1.0)?;
    let p = out.stage("profile", || solve_profile(&j1, &f, 40.0, 0.05, None))?;
    let p = fit_asymptotics(&p, &j1, &f)?;
    results.push((
        "profile",
        p.residual <= 1e-8 && p.c > 0.0 && p.is_strictly_monotone(),
        format!("c = {:?} residual = {:e}", p.c, p.residual),
    ));

    let mut zok = true;
    for eta in [0.1, 0.3, 0.6] {
        zok &= zfn(eta, 0.1, 20.0, Some(220.0), 2001)?.pass;
    }
    results.push(("zfn", zok, "eta in {0.1, 0.3, 0.6}".into()));

    let line = ExteriorGrid::build(GridBox::new_1d(-5.0, 5.0), 0.05, ObstacleSpec::Empty, false, &k1)?;
    let ev = Evolver::new(&line, f.clone(), Closure::Constant(0.0));
    let mut worst = f64::INFINITY;
    for _ in 0..10 {
        let v0: Vec<f64> = (0..line.len()).map(|_| rng.random_range(0.0..1.0)).collect();
        let u0: Vec<f64> = v0.iter().map(|v| (v + rng.random_range(0.0..0.3)).min(1.0)).collect();
        let u = ev.advance(&Field::from_values(&line, 0.0, u0)?, 2.0, ev.max_dt(), Scheme::Heun, |_, _| {})?;
        let v = ev.advance(&Field::from_values(&line, 0.0, v0)?, 2.0, ev.max_dt(), Scheme::Heun, |_, _| {})?;
        worst = worst.min(ordering_report(&line, &u, &v)?.min_diff);
    }
    results.push(("comparison", worst >= -1e-10, format!("min(u - v) = {worst:e}")));

    let a = p.asymptotics.as_ref().expect("fitted");
    let sp = ShiftParams::new(1.0, a.lambda0, p.c)?;
    let t_cap = sp.t_cap();
    let eq = (sp.c * t_cap + sp.xi(t_cap)?).abs();
    results.push(("xi", eq <= 1e-12, format!("|cT + xi(T)| = {eq:e}")));

    let mut csv = String::from("check,pass,detail\n");
    let mut failed = Vec::new();
    for (name, ok, detail) in &results {
        println!("selfcheck {name} {} {detail}", if *ok { "ok" } else { "FAIL" });
        csv.push_str(&format!("{name},{ok},\"{detail}\"\n"));
        if !ok {
            failed.push(*name);
        }
    }
    out.text("selfcheck.csv", &csv)?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Assertion(format!("selfcheck failed: {}", failed.join(", "))))
    }
}
