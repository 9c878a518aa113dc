//! Explicit time stepping of `u_t = int_Omega J(x-y)[u(y)-u(x)] dy + f(u)` and the
//! Picard oracle for its integral form.

use std::sync::Arc;

use rayon::prelude::*;

use crate::domain::ExteriorGrid;
use crate::error::{Error, Result};
use crate::nonlinearity::Bistable;
use crate::traveling_wave::ProfileInterp;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// Two-stage strong-stability-preserving Runge-Kutta; order-preserving for admissible `dt`.
    Heun,
    Rk4,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Heun => "heun",
            Scheme::Rk4 => "rk4",
        }
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "heun" => Ok(Scheme::Heun),
            "rk4" => Ok(Scheme::Rk4),
            _ => Err(crate::error::invalid("evolve.scheme", format!("unknown scheme `{s}`"))),
        }
    }
}

/// Values assigned to cells outside the computational box.
#[derive(Clone)]
pub enum Closure {
    Constant(f64),
    /// `phi(x1 + c t + shift)`.
    Planar {
        profile: ProfileInterp,
        c: f64,
        shift: f64,
    },
    Function(Arc<dyn Fn([f64; 2], f64) -> f64 + Send + Sync>),
}

impl std::fmt::Debug for Closure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Closure::Constant(v) => write!(f, "Constant({v})"),
            Closure::Planar { c, shift, .. } => write!(f, "Planar {{ c: {c}, shift: {shift} }}"),
            Closure::Function(_) => write!(f, "Function"),
        }
    }
}

impl Closure {
    #[inline]
    pub fn value(&self, x: [f64; 2], t: f64) -> f64 {
        match self {
            Closure::Constant(v) => *v,
            Closure::Planar { profile, c, shift } => profile.eval(x[0] + c * t + shift),
            Closure::Function(g) => g(x, t),
        }
    }
}

/// Grid state at one time; obstacle cells hold NaN and never enter sums.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    pub values: Vec<f64>,
    pub t: f64,
}

impl Field {
    /// Samples `u0` at exterior cell centers.
    pub fn from_fn<G: Fn([f64; 2]) -> f64>(grid: &ExteriorGrid, t: f64, u0: G) -> Self {
        let values = (0..grid.len())
            .map(|k| {
                if grid.is_exterior(k) {
                    u0(grid.center(k))
                } else {
                    f64::NAN
                }
            })
            .collect();
        Field { values, t }
    }

    /// Wraps raw values, forcing the obstacle sentinel.
    pub fn from_values(grid: &ExteriorGrid, t: f64, mut values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "field has {} values, grid has {} cells",
                values.len(),
                grid.len()
            )));
        }
        for k in 0..grid.len() {
            if !grid.is_exterior(k) {
                values[k] = f64::NAN;
            }
        }
        Ok(Field { values, t })
    }

    pub fn min_max(&self) -> (f64, f64) {
        self.values
            .iter()
            .filter(|v| !v.is_nan())
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)))
    }

    /// Sup-distance over exterior cells.
    pub fn sup_distance(&self, other: &Field) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .filter(|(a, _)| !a.is_nan())
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub snapshots: Vec<Field>,
    pub dt: f64,
    pub scheme: Scheme,
}

/// Minimum of `u - v` and the number of cells where it is below `-1e-10`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderingReport {
    pub min_diff: f64,
    pub violations: usize,
}

pub const ORDER_TOL: f64 = 1e-10;

pub fn ordering_report(grid: &ExteriorGrid, u: &Field, v: &Field) -> Result<OrderingReport> {
    if u.values.len() != grid.len() || v.values.len() != grid.len() {
        return Err(Error::GridMismatch("fields do not match the grid".into()));
    }
    if u.t != v.t {
        return Err(Error::GridMismatch(format!("time stamps differ: {} vs {}", u.t, v.t)));
    }
    let mut min_diff = f64::INFINITY;
    let mut violations = 0;
    for k in grid.exterior_cells() {
        let d = u.values[k] - v.values[k];
        min_diff = min_diff.min(d);
        if d < -ORDER_TOL {
            violations += 1;
        }
    }
    Ok(OrderingReport {
        min_diff,
        violations,
    })
}

/// Outcome of the Picard iteration.
#[derive(Debug, Clone)]
pub struct PicardReport {
    pub field: Field,
    /// `sup |u^{k+1} - u^k|` over the inner time grid, per iteration.
    pub distances: Vec<f64>,
    /// Largest ratio of successive distances while they are above rounding level.
    pub contraction: f64,
}

/// Inner time steps of the Picard trapezoid rule.
pub const PICARD_INNER_STEPS: usize = 128;

pub struct Evolver<'a> {
    grid: &'a ExteriorGrid,
    f: Bistable,
    closure: Closure,
}

impl<'a> Evolver<'a> {
    pub fn new(grid: &'a ExteriorGrid, f: Bistable, closure: Closure) -> Self {
        Evolver { grid, f, closure }
    }

    pub fn grid(&self) -> &ExteriorGrid {
        self.grid
    }

    pub fn nonlinearity(&self) -> &Bistable {
        &self.f
    }

    pub fn closure(&self) -> &Closure {
        &self.closure
    }

    /// Largest admissible step `0.25 / (2 + Lip f)`.
    pub fn max_dt(&self) -> f64 {
        0.25 / (2.0 + self.f.lipschitz())
    }

    fn check(&self, u: &[f64]) -> Result<()> {
        if u.len() != self.grid.len() {
            return Err(Error::GridMismatch(format!(
                "field has {} values, grid has {} cells",
                u.len(),
                self.grid.len()
            )));
        }
        Ok(())
    }

    /// Nonlocal operator plus reaction at time `t`.
    pub fn rhs(&self, u: &Field) -> Result<Field> {
        Ok(Field {
            values: self.rhs_at(&u.values, u.t)?,
            t: u.t,
        })
    }

    pub fn rhs_at(&self, u: &[f64], t: f64) -> Result<Vec<f64>> {
        self.check(u)?;
        let g = self.grid;
        let ext = g.pad(u, |x| self.closure.value(x, t));
        let conv = g.convolve_padded(&ext);
        let d = g.degree();
        let f = &self.f;
        Ok(conv
            .into_par_iter()
            .enumerate()
            .map(|(k, s)| {
                if g.is_exterior(k) {
                    s - d[k] * u[k] + f.eval_extended(u[k])
                } else {
                    f64::NAN
                }
            })
            .collect())
    }

    fn axpy(u: &[f64], a: f64, k: &[f64]) -> Vec<f64> {
        u.par_iter().zip(k.par_iter()).map(|(x, y)| x + a * y).collect()
    }

    fn step_unchecked(&self, u: &Field, dt: f64, scheme: Scheme) -> Result<Field> {
        let t = u.t;
        let values = match scheme {
            Scheme::Heun => {
                let k1 = self.rhs_at(&u.values, t)?;
                let u1 = Self::axpy(&u.values, dt, &k1);
                let k2 = self.rhs_at(&u1, t + dt)?;
                u.values
                    .par_iter()
                    .zip(u1.par_iter().zip(k2.par_iter()))
                    .map(|(a, (b, k))| 0.5 * a + 0.5 * (b + dt * k))
                    .collect()
            }
            Scheme::Rk4 => {
                let k1 = self.rhs_at(&u.values, t)?;
                let k2 = self.rhs_at(&Self::axpy(&u.values, 0.5 * dt, &k1), t + 0.5 * dt)?;
                let k3 = self.rhs_at(&Self::axpy(&u.values, 0.5 * dt, &k2), t + 0.5 * dt)?;
                let k4 = self.rhs_at(&Self::axpy(&u.values, dt, &k3), t + dt)?;
                (0..u.values.len())
                    .into_par_iter()
                    .map(|i| {
                        u.values[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
                    })
                    .collect()
            }
        };
        Ok(Field {
            values,
            t: t + dt,
        })
    }

    /// One explicit step; `dt` must not exceed [`Evolver::max_dt`].
    pub fn step(&self, u: &Field, dt: f64, scheme: Scheme) -> Result<Field> {
        let max = self.max_dt();
        if !(dt > 0.0 && dt <= max * (1.0 + 1e-12)) {
            return Err(Error::TimeStep { dt, max });
        }
        self.step_unchecked(u, dt, scheme)
    }

    /// Steps from `u0.t` to exactly `t1`, calling `observe` after every step with the
    /// step index.
    pub fn advance<O: FnMut(usize, &Field)>(
        &self,
        u0: &Field,
        t1: f64,
        dt: f64,
        scheme: Scheme,
        mut observe: O,
    ) -> Result<Field> {
        let max = self.max_dt();
        if !(dt > 0.0 && dt <= max * (1.0 + 1e-12)) {
            return Err(Error::TimeStep { dt, max });
        }
        if t1 < u0.t {
            return Err(crate::error::invalid("evolve.t1", "t1 precedes the initial time"));
        }
        let t0 = u0.t;
        let steps = ((t1 - t0) / dt - 1e-9).ceil().max(0.0) as usize;
        let mut u = u0.clone();
        for k in 0..steps {
            // t_k = t0 + k dt computed directly so restarts land on the same times
            let target = if k + 1 == steps { t1 } else { t0 + (k + 1) as f64 * dt };
            let mut next = self.step_unchecked(&u, target - u.t, scheme)?;
            next.t = target;
            u = next;
            observe(k + 1, &u);
        }
        Ok(u)
    }

    /// Snapshots every `stride` steps plus the endpoints.
    pub fn solve_interval(
        &self,
        u0: &Field,
        t1: f64,
        dt: f64,
        stride: usize,
        scheme: Scheme,
    ) -> Result<Trajectory> {
        let stride = stride.max(1);
        let mut snapshots = vec![u0.clone()];
        let last = self.advance(u0, t1, dt, scheme, |k, u| {
            if k % stride == 0 {
                snapshots.push(u.clone());
            }
        })?;
        if snapshots.last().map(|s| s.t) != Some(last.t) {
            snapshots.push(last);
        }
        Ok(Trajectory {
            snapshots,
            dt,
            scheme,
        })
    }

    /// Fixed-point iteration of `u(t) = u0 + int_0^t F(u(s)) ds` with the trapezoid rule.
    pub fn picard_solve(&self, u0: &Field, t_window: f64, iterations: usize) -> Result<PicardReport> {
        self.check(&u0.values)?;
        let factor = (2.0 + self.f.max_fprime()) * t_window;
        if !(t_window > 0.0 && factor < 1.0) {
            return Err(Error::Contraction(factor));
        }
        let m = PICARD_INNER_STEPS;
        let tau = t_window / m as f64;
        let times: Vec<f64> = (0..=m).map(|j| u0.t + j as f64 * tau).collect();
        let mut iterate: Vec<Vec<f64>> = vec![u0.values.clone(); m + 1];
        let mut distances = Vec::new();
        for _ in 0..iterations {
            let forces: Vec<Vec<f64>> = iterate
                .iter()
                .zip(&times)
                .map(|(u, &t)| self.rhs_at(u, t))
                .collect::<Result<_>>()?;
            let mut next = Vec::with_capacity(m + 1);
            next.push(u0.values.clone());
            let mut acc = vec![0.0; u0.values.len()];
            for j in 1..=m {
                for (a, (p, q)) in acc.iter_mut().zip(forces[j - 1].iter().zip(&forces[j])) {
                    *a += 0.5 * tau * (p + q);
                }
                next.push(u0.values.iter().zip(&acc).map(|(u, a)| u + a).collect());
            }
            let dist = next
                .iter()
                .zip(&iterate)
                .map(|(a, b)| {
                    a.iter()
                        .zip(b)
                        .filter(|(x, _)| !x.is_nan())
                        .fold(0.0, |m: f64, (x, y)| m.max((x - y).abs()))
                })
                .fold(0.0, f64::max);
            distances.push(dist);
            iterate = next;
            if dist < 1e-15 {
                break;
            }
        }
        let mut contraction: f64 = 0.0;
        for w in distances.windows(2) {
            if w[0] > 1e-12 {
                let ratio = w[1] / w[0];
                if ratio > 1.0 {
                    return Err(Error::NoConvergence {
                        steps: distances.len(),
                        residual: w[1],
                    });
                }
                contraction = contraction.max(ratio);
            }
        }
        Ok(PicardReport {
            field: Field {
                values: iterate.pop().expect("non-empty"),
                t: u0.t + t_window,
            },
            distances,
            contraction,
        })
    }
}
