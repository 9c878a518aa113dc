//! Theorem-level scenarios: entire solutions, obstacle passage and recovery,
//! far-field planarity and the stationary limit.

use rayon::prelude::*;

use crate::certificates::large_time::LargeTime;
use crate::certificates::shift::TwoFront;
use crate::domain::ExteriorGrid;
use crate::error::{invalid, Error, Result};
use crate::evolution::{Closure, Evolver, Field, Scheme};
use crate::nonlinearity::Bistable;
use crate::traveling_wave::ProfileInterp;

/// Tolerance for monotonicity, sandwich and time-monotonicity checks.
pub const CONSTRUCTION_TOL: f64 = 1e-8;

/// `sup_probe |u - phi(x1 + c t + shift)|`.
pub fn front_distance(
    field: &Field,
    grid: &ExteriorGrid,
    profile: &ProfileInterp,
    c: f64,
    shift: f64,
    probe: &[usize],
) -> Result<f64> {
    if probe.is_empty() {
        return Err(invalid("experiment.probe", "probe region is empty"));
    }
    Ok(probe
        .par_iter()
        .map(|&k| (field.values[k] - profile.eval(grid.center(k)[0] + c * field.t + shift)).abs())
        .reduce(|| 0.0, f64::max))
}

/// Rightmost upward crossing of `level` along the grid row nearest to `x2`, linearly
/// interpolated; `None` if the row never crosses.
pub fn front_position(field: &Field, grid: &ExteriorGrid, level: f64, x2: f64) -> Option<f64> {
    let (nx, ny) = grid.shape();
    let j = if grid.dim() == 1 {
        0
    } else {
        let b = grid.bbox();
        (((x2 - b.lower[1]) / grid.h() - 0.5).round().max(0.0) as usize).min(ny - 1)
    };
    for i in (0..nx - 1).rev() {
        let (a, b) = (field.values[grid.index(i, j)], field.values[grid.index(i + 1, j)]);
        if a.is_nan() || b.is_nan() {
            continue;
        }
        if a < level && b >= level {
            let x0 = grid.center(grid.index(i, j))[0];
            return Some(x0 + grid.h() * (level - a) / (b - a));
        }
    }
    None
}

/// `sup |u(x + h e1) - u(x)| / h` over pairs of exterior cells.
pub fn lipschitz_quotient(field: &Field, grid: &ExteriorGrid) -> f64 {
    let (nx, ny) = grid.shape();
    let h = grid.h();
    (0..nx - 1)
        .into_par_iter()
        .map(|i| {
            let mut m: f64 = 0.0;
            for j in 0..ny {
                let (a, b) = (field.values[grid.index(i, j)], field.values[grid.index(i + 1, j)]);
                if !a.is_nan() && !b.is_nan() {
                    m = m.max((b - a).abs() / h);
                }
            }
            m
        })
        .reduce(|| 0.0, f64::max)
}

#[derive(Debug, Clone)]
pub struct EntireConfig {
    pub n_list: Vec<f64>,
    pub eval_times: Vec<f64>,
    pub dt: f64,
    pub scheme: Scheme,
    /// Sandwich checks run at every step with `t <= t1`.
    pub t1: f64,
    /// Window after the start over which the Lipschitz quotient is tracked.
    pub lipschitz_window: f64,
    /// Level `phi_low` delimiting the mid-zone for the positivity of `u_t`.
    pub phi_low: f64,
}

/// Per-start-time diagnostics of one `u_n`.
#[derive(Debug, Clone)]
pub struct EntireRun {
    pub n: f64,
    pub fields: Vec<Field>,
    /// `min(u - W-, W+ - u)` over checked steps.
    pub sandwich_margin: f64,
    pub sandwich_violations: usize,
    pub sandwich_checks: usize,
    /// `min` of the discrete `u_t` over all steps and exterior cells.
    pub ut_min: f64,
    /// `min u_t` over the mid-zone for `t <= t1`.
    pub midzone_ut_min: f64,
    /// `(t - start, quotient)` samples.
    pub lipschitz: Vec<(f64, f64)>,
    /// `D(-n)` on the probe.
    pub start_distance: f64,
}

impl EntireRun {
    /// Relative growth of the Lipschitz quotient over its initial value.
    pub fn lipschitz_growth(&self) -> f64 {
        let m0 = self.lipschitz.first().map_or(0.0, |s| s.1);
        let m = self.lipschitz.iter().map(|s| s.1).fold(0.0, f64::max);
        if m0 > 0.0 {
            m / m0 - 1.0
        } else {
            f64::INFINITY
        }
    }
}

#[derive(Debug, Clone)]
pub struct EntireSolutionApprox {
    pub eval_times: Vec<f64>,
    pub runs: Vec<EntireRun>,
    /// `cauchy[e][i] = sup |u_{n_{i+1}} - u_{n_i}|` at `eval_times[e]`.
    pub cauchy: Vec<Vec<f64>>,
    /// `min (u_{n_{i+1}} - u_{n_i})` over all evaluation times and consecutive pairs.
    pub monotone_min: f64,
}

impl EntireSolutionApprox {
    /// The largest-`n` fields.
    pub fn limit(&self) -> &[Field] {
        &self.runs.last().expect("at least one run").fields
    }

    /// Last Cauchy difference at each evaluation time.
    pub fn error_estimate(&self) -> Vec<f64> {
        self.cauchy.iter().map(|c| c.last().copied().unwrap_or(f64::NAN)).collect()
    }
}

fn sandwich_scan(grid: &ExteriorGrid, u: &Field, w: &TwoFront) -> Result<(f64, usize)> {
    let xi = w.params.xi(u.t)?;
    Ok(grid
        .exterior_cells()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&k| {
            let x = grid.center(k);
            let lo = w.w_minus_with(x[0], u.t, xi);
            let hi = w.w_plus_with(x[0], u.t, xi);
            let v = u.values[k];
            let m = (v - lo).min(hi - v);
            (m, usize::from(m < -CONSTRUCTION_TOL))
        })
        .reduce(|| (f64::INFINITY, 0), |a, b| (a.0.min(b.0), a.1 + b.1)))
}

/// One `u_n`: starts from `W-(., -n)` and integrates through the evaluation times.
pub fn entire_run(
    grid: &ExteriorGrid,
    f: &Bistable,
    w: &TwoFront,
    n: f64,
    cfg: &EntireConfig,
) -> Result<EntireRun> {
    let start = -n;
    if start > cfg.t1 {
        return Err(Error::Precondition(format!(
            "start time {start} lies beyond T1 = {}",
            cfg.t1
        )));
    }
    let c = w.params.c;
    let closure = Closure::Planar {
        profile: w.profile.clone(),
        c,
        shift: 0.0,
    };
    let ev = Evolver::new(grid, f.clone(), closure);
    let xi0 = w.params.xi(start)?;
    let mut u = Field::from_fn(grid, start, |x| w.w_minus_with(x[0], start, xi0));
    let probe = grid.interior_probe(grid.kernel().radius());
    let start_distance = front_distance(&u, grid, &w.profile, c, 0.0, &probe)?;
    let mut run = EntireRun {
        n,
        fields: Vec::new(),
        sandwich_margin: f64::INFINITY,
        sandwich_violations: 0,
        sandwich_checks: 0,
        ut_min: f64::INFINITY,
        midzone_ut_min: f64::INFINITY,
        lipschitz: vec![(0.0, lipschitz_quotient(&u, grid))],
        start_distance,
    };
    let (m, v) = sandwich_scan(grid, &u, w)?;
    run.sandwich_margin = m;
    run.sandwich_violations += v;
    run.sandwich_checks += 1;
    let lip_every = (1.0 / cfg.dt).round().max(1.0) as usize;
    let mut err: Option<Error> = None;
    for &te in &cfg.eval_times {
        if te < u.t {
            return Err(invalid("experiment.eval_times", "evaluation times must follow the start"));
        }
        let mut prev = u.clone();
        u = ev.advance(&u, te, cfg.dt, cfg.scheme, |k, cur| {
            let dt = cur.t - prev.t;
            let (all, mid) = cur
                .values
                .par_iter()
                .zip(prev.values.par_iter())
                .filter(|(a, _)| !a.is_nan())
                .map(|(a, b)| {
                    let ut = (a - b) / dt;
                    let in_mid = *a >= cfg.phi_low && *a <= 1.0 - cfg.phi_low;
                    (ut, if in_mid { ut } else { f64::INFINITY })
                })
                .reduce(|| (f64::INFINITY, f64::INFINITY), |p, q| (p.0.min(q.0), p.1.min(q.1)));
            run.ut_min = run.ut_min.min(all);
            if cur.t <= cfg.t1 {
                run.midzone_ut_min = run.midzone_ut_min.min(mid);
                match sandwich_scan(grid, cur, w) {
                    Ok((m, v)) => {
                        run.sandwich_margin = run.sandwich_margin.min(m);
                        run.sandwich_violations += v;
                        run.sandwich_checks += 1;
                    }
                    Err(e) => err = Some(e),
                }
            }
            let age = cur.t - start;
            if age <= cfg.lipschitz_window + 1e-9 && k % lip_every == 0 {
                run.lipschitz.push((age, lipschitz_quotient(cur, grid)));
            }
            prev = cur.clone();
        })?;
        if let Some(e) = err.take() {
            return Err(e);
        }
        run.fields.push(u.clone());
    }
    Ok(run)
}

/// Builds `u_n` for every `n` in the list and compares them at the evaluation times.
pub fn construct_entire(
    grid: &ExteriorGrid,
    f: &Bistable,
    w: &TwoFront,
    cfg: &EntireConfig,
) -> Result<EntireSolutionApprox> {
    if cfg.n_list.is_empty() || cfg.n_list.windows(2).any(|p| p[1] <= p[0]) {
        return Err(invalid("experiment.n_list", "must be non-empty and increasing"));
    }
    if let Some(&last) = cfg.eval_times.last() {
        if cfg.eval_times.windows(2).any(|p| p[1] <= p[0]) || !last.is_finite() {
            return Err(invalid("experiment.eval_times", "must be increasing"));
        }
    } else {
        return Err(invalid("experiment.eval_times", "no evaluation times"));
    }
    let runs: Vec<EntireRun> = cfg
        .n_list
        .par_iter()
        .map(|&n| entire_run(grid, f, w, n, cfg))
        .collect::<Result<_>>()?;
    let mut cauchy = vec![Vec::new(); cfg.eval_times.len()];
    let mut monotone_min = f64::INFINITY;
    for pair in runs.windows(2) {
        for (e, (a, b)) in pair[0].fields.iter().zip(&pair[1].fields).enumerate() {
            cauchy[e].push(b.sup_distance(a));
            let m = b
                .values
                .iter()
                .zip(&a.values)
                .filter(|(x, _)| !x.is_nan())
                .fold(f64::INFINITY, |m, (x, y)| m.min(x - y));
            monotone_min = monotone_min.min(m);
        }
    }
    Ok(EntireSolutionApprox {
        eval_times: cfg.eval_times.clone(),
        runs,
        cauchy,
        monotone_min,
    })
}

#[derive(Debug, Clone)]
pub struct RecoveryConfig {
    /// Initial `theta0`-level position of the planar front (right of the obstacle).
    pub front_start: f64,
    pub t_end: f64,
    pub dt: f64,
    pub scheme: Scheme,
    /// Diagnostics are recorded every `sample_every` time units.
    pub sample_every: f64,
    /// Hypothesis tolerance `eps`.
    pub eps: f64,
    /// Cells within this distance of the obstacle form `K_eps`.
    pub keps_radius: f64,
    /// Transverse offset of the off-axis front line.
    pub offaxis: f64,
    /// Optional large-time pair checked after the hand-off.
    pub sandwich: Option<LargeTime>,
}

/// Time series of a recovery run.
#[derive(Debug, Clone, Default)]
pub struct FrontDiagnostics {
    pub times: Vec<f64>,
    pub distance: Vec<f64>,
    pub front_axis: Vec<f64>,
    pub front_offaxis: Vec<f64>,
    pub min: Vec<f64>,
    pub max: Vec<f64>,
    /// Minimum of `u` over cells next to the obstacle.
    pub boundary_min: Vec<f64>,
    /// `sup |u - phi|` outside `K_eps`.
    pub farfield: Vec<f64>,
    /// Earliest sample from which `u >= 1 - eps` on the obstacle boundary persists.
    pub t_eps: Option<f64>,
    /// Far-field closeness holds at `t_eps`.
    pub farfield_at_t_eps: Option<bool>,
    pub sandwich_violations: usize,
    pub sandwich_checks: usize,
    /// Final field, kept for translate checks and dumps.
    pub last: Option<Field>,
    /// Snapshots at every sample time (only when requested).
    pub snapshots: Vec<Field>,
}

impl FrontDiagnostics {
    pub fn peak(&self) -> f64 {
        self.distance.iter().cloned().fold(0.0, f64::max)
    }

    pub fn final_distance(&self) -> f64 {
        self.distance.last().copied().unwrap_or(f64::NAN)
    }

    /// After `D` first drops below `low` (following the peak), it never exceeds `high`.
    pub fn settles(&self, low: f64, high: f64) -> bool {
        let peak_at = self
            .distance
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |(i, m), (j, &d)| if d > m { (j, d) } else { (i, m) })
            .0;
        match self.distance[peak_at..].iter().position(|&d| d < low) {
            None => false,
            Some(p) => self.distance[peak_at + p..].iter().all(|&d| d <= high),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,distance,front_axis,front_offaxis,min,max,boundary_min,farfield\n");
        for i in 0..self.times.len() {
            s.push_str(&format!(
                "{:?},{:?},{:?},{:?},{:?},{:?},{:?},{:?}\n",
                self.times[i],
                self.distance[i],
                self.front_axis[i],
                self.front_offaxis[i],
                self.min[i],
                self.max[i],
                self.boundary_min[i],
                self.farfield[i]
            ));
        }
        s
    }
}

/// Starts from the planar front right of the obstacle and integrates to `t_end`,
/// recording `D(t)` and the hypotheses of the large-time result.
pub fn recovery_experiment(
    grid: &ExteriorGrid,
    f: &Bistable,
    profile: &ProfileInterp,
    c: f64,
    cfg: &RecoveryConfig,
    keep_snapshots: bool,
) -> Result<FrontDiagnostics> {
    let b = grid.bbox();
    if let Some(bb) = grid.obstacle().bounding_box() {
        if cfg.front_start - c * cfg.t_end > bb[0] {
            return Err(Error::Precondition(
                "front never reaches the obstacle before t_end".into(),
            ));
        }
    }
    if cfg.front_start >= b.upper[0] || cfg.front_start - c * cfg.t_end <= b.lower[0] {
        return Err(invalid("experiment.front_start", "front leaves the box"));
    }
    let shift = -cfg.front_start;
    let ev = Evolver::new(
        grid,
        f.clone(),
        Closure::Planar {
            profile: profile.clone(),
            c,
            shift,
        },
    );
    let l = grid.kernel().radius();
    let probe = grid.interior_probe(l);
    let boundary = grid.boundary_cells();
    let far: Vec<usize> = {
        let center = grid.obstacle().bounding_box().map(|bb| [(bb[0] + bb[1]) / 2.0, (bb[2] + bb[3]) / 2.0]);
        probe
            .iter()
            .copied()
            .filter(|&k| match center {
                None => true,
                Some(cc) => {
                    let x = grid.center(k);
                    ((x[0] - cc[0]).powi(2) + (x[1] - cc[1]).powi(2)).sqrt() > cfg.keps_radius
                }
            })
            .collect()
    };
    let theta0 = f.theta0();
    let mut d = FrontDiagnostics::default();
    let mut u = Field::from_fn(grid, 0.0, |x| profile.eval(x[0] + shift));
    let samples = (cfg.t_end / cfg.sample_every).round() as usize;
    let record = |u: &Field, d: &mut FrontDiagnostics| -> Result<()> {
        d.times.push(u.t);
        d.distance.push(front_distance(u, grid, profile, c, shift, &probe)?);
        d.front_axis.push(front_position(u, grid, theta0, 0.0).unwrap_or(f64::NAN));
        d.front_offaxis.push(front_position(u, grid, theta0, cfg.offaxis).unwrap_or(f64::NAN));
        let (lo, hi) = u.min_max();
        d.min.push(lo);
        d.max.push(hi);
        d.boundary_min.push(boundary.iter().map(|&k| u.values[k]).fold(f64::INFINITY, f64::min));
        d.farfield.push(if far.is_empty() {
            0.0
        } else {
            front_distance(u, grid, profile, c, shift, &far)?
        });
        if keep_snapshots {
            d.snapshots.push(u.clone());
        }
        Ok(())
    };
    record(&u, &mut d)?;
    for s in 1..=samples {
        let te = (s as f64 * cfg.sample_every).min(cfg.t_end);
        u = ev.advance(&u, te, cfg.dt, cfg.scheme, |_, _| {})?;
        record(&u, &mut d)?;
    }
    // the hypothesis time: u >= 1 - eps on the boundary from here on
    if !boundary.is_empty() {
        let ok: Vec<bool> = d.boundary_min.iter().map(|&m| m >= 1.0 - cfg.eps).collect();
        let mut first = None;
        for i in (0..ok.len()).rev() {
            if ok[i] {
                first = Some(i);
            } else {
                break;
            }
        }
        if let Some(i) = first {
            d.t_eps = Some(d.times[i]);
            d.farfield_at_t_eps = Some(d.farfield[i] <= cfg.eps);
        }
    }
    if let (Some(lt), Some(te)) = (&cfg.sandwich, d.t_eps) {
        // re-run from the hand-off so the pair is compared at every sample
        let ts = d.times.iter().position(|&t| t == te).expect("sampled");
        let mut v = if keep_snapshots {
            d.snapshots[ts].clone()
        } else {
            let mut w = Field::from_fn(grid, 0.0, |x| profile.eval(x[0] + shift));
            w = ev.advance(&w, te, cfg.dt, cfg.scheme, |_, _| {})?;
            w
        };
        for s in ts..d.times.len() {
            if d.times[s] > v.t {
                v = ev.advance(&v, d.times[s], cfg.dt, cfg.scheme, |_, _| {})?;
            }
            let tau = v.t - te + 1.0;
            let viol = grid
                .exterior_cells()
                .filter(|&k| {
                    let x = grid.center(k);
                    let lo = lt.u_minus(x, tau).unwrap_or(f64::NEG_INFINITY);
                    let hi = lt.u_plus(x, tau).unwrap_or(f64::INFINITY);
                    v.values[k] < lo - CONSTRUCTION_TOL || v.values[k] > hi + CONSTRUCTION_TOL
                })
                .count();
            d.sandwich_violations += viol;
            d.sandwich_checks += 1;
        }
    }
    d.last = Some(u);
    Ok(d)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FarFieldReport {
    pub offsets: Vec<f64>,
    pub distances: Vec<f64>,
    pub strictly_decreasing: bool,
}

/// Local front distance in windows translated by `offsets` along `x2`.
pub fn farfield_translate_check(
    field: &Field,
    grid: &ExteriorGrid,
    profile: &ProfileInterp,
    c: f64,
    shift: f64,
    offsets: &[f64],
    half_width: f64,
) -> Result<FarFieldReport> {
    if grid.dim() != 2 {
        return Err(invalid("experiment.offsets", "translate checks need a 2-D grid"));
    }
    let l = grid.kernel().radius();
    let b = grid.bbox();
    let probe = grid.interior_probe(l);
    let mut distances = Vec::new();
    for &o in offsets {
        if o + half_width > b.upper[1] - l || o - half_width < b.lower[1] + l {
            return Err(invalid("experiment.offsets", format!("offset {o} leaves the box")));
        }
        let window: Vec<usize> = probe
            .iter()
            .copied()
            .filter(|&k| (grid.center(k)[1] - o).abs() <= half_width)
            .collect();
        distances.push(front_distance(field, grid, profile, c, shift, &window)?);
    }
    let strictly_decreasing = distances.windows(2).all(|p| p[1] < p[0]);
    Ok(FarFieldReport {
        offsets: offsets.to_vec(),
        distances,
        strictly_decreasing,
    })
}

#[derive(Debug, Clone)]
pub struct LiouvilleReport {
    pub field: Field,
    pub sup_dev: f64,
    pub rhs_sup: f64,
    pub converged: bool,
}

pub const LIOUVILLE_DEV_TOL: f64 = 1e-3;
pub const LIOUVILLE_RHS_TOL: f64 = 1e-6;

/// Integrates data equal to 1 away from the obstacle with a dip to `dip` at its
/// boundary and checks convergence to the constant 1.
pub fn stationary_liouville(
    grid: &ExteriorGrid,
    f: &Bistable,
    dip: f64,
    dip_width: f64,
    t_end: f64,
    dt: f64,
    scheme: Scheme,
) -> Result<LiouvilleReport> {
    let cf = f.check_condition_f(grid.min_degree());
    if !cf.pass {
        return Err(Error::Precondition(format!(
            "condition F fails: max f' = {} vs min degree {}",
            cf.max_fprime, cf.degree_min
        )));
    }
    let boundary: Vec<[f64; 2]> = grid.boundary_cells().iter().map(|&k| grid.center(k)).collect();
    let u0 = Field::from_fn(grid, 0.0, |x| {
        let dist = boundary
            .iter()
            .map(|b| ((x[0] - b[0]).powi(2) + (x[1] - b[1]).powi(2)).sqrt())
            .fold(f64::INFINITY, f64::min);
        1.0 - (1.0 - dip) * (-(dist / dip_width).powi(2)).exp()
    });
    let ev = Evolver::new(grid, f.clone(), Closure::Constant(1.0));
    let field = ev.advance(&u0, t_end, dt, scheme, |_, _| {})?;
    let sup_dev = field
        .values
        .iter()
        .filter(|v| !v.is_nan())
        .fold(0.0, |m: f64, v| m.max((v - 1.0).abs()));
    let rhs_sup = ev
        .rhs(&field)?
        .values
        .iter()
        .filter(|v| !v.is_nan())
        .fold(0.0, |m: f64, v| m.max(v.abs()));
    Ok(LiouvilleReport {
        converged: sup_dev <= LIOUVILLE_DEV_TOL && rhs_sup <= LIOUVILLE_RHS_TOL,
        field,
        sup_dev,
        rhs_sup,
    })
}
