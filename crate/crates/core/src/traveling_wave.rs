//! Planar traveling waves `phi(x1 + c t)` of the bistable nonlocal equation.
//!
//! The profile solves `(J1 * phi) - phi - c phi' + f(phi) = 0` with `phi(-inf) = 0`,
//! `phi(+inf) = 1` and the normalization `phi(0) = theta0`.

use std::fmt::Write as _;

use crate::banded::BorderedBand;
use crate::error::{invalid, Error, Result};
use crate::kernels::Kernel1D;
use crate::nonlinearity::Bistable;

/// Residual ceiling for a converged profile.
pub const RESIDUAL_TOL: f64 = 1e-8;
/// Newton keeps iterating below [`RESIDUAL_TOL`] until this level or stagnation.
pub const RESIDUAL_TARGET: f64 = 1e-13;
pub const MAX_NEWTON_STEPS: usize = 100;
/// Tail values below this level are dominated by rounding and excluded from fits.
pub const TAIL_FLOOR: f64 = 1e-10;
/// `1 - phi` below this is rounding noise; monotonicity is not checked there.
pub const SATURATION: f64 = 64.0 * f64::EPSILON;
/// Inner edge `|z| >= 5` of the tail fit regions.
pub const TAIL_START: f64 = 5.0;
/// Minimum number of nodes per tail fit.
pub const MIN_FIT_NODES: usize = 20;

/// Constants of the exponential tail bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Asymptotics {
    pub alpha0: f64,
    pub beta0: f64,
    pub alpha1: f64,
    pub beta1: f64,
    pub gamma0: f64,
    pub delta0: f64,
    pub gamma1: f64,
    pub delta1: f64,
    pub c_phi: f64,
    pub k_phi: f64,
    pub big_k_phi: f64,
    /// Left decay rate of the discrete profile equation on the solver grid.
    pub lambda_h: f64,
    pub lambda0: f64,
    /// Slopes of the log-linear tail fits.
    pub lambda_fit: f64,
    pub mu_fit: f64,
    pub left_nodes: usize,
    pub right_nodes: usize,
}

impl Asymptotics {
    const KEYS: [&'static str; 15] = [
        "alpha0", "beta0", "alpha1", "beta1", "gamma0", "delta0", "gamma1", "delta1", "c_phi",
        "k_phi", "big_k_phi", "lambda_h", "lambda0", "lambda_fit", "mu_fit",
    ];

    fn values(&self) -> [f64; 15] {
        [
            self.alpha0,
            self.beta0,
            self.alpha1,
            self.beta1,
            self.gamma0,
            self.delta0,
            self.gamma1,
            self.delta1,
            self.c_phi,
            self.k_phi,
            self.big_k_phi,
            self.lambda_h,
            self.lambda0,
            self.lambda_fit,
            self.mu_fit,
        ]
    }
}

/// Discretized wave profile on the uniform grid `z_i = -z_max + i h`.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveProfile {
    pub h: f64,
    pub z_max: f64,
    pub phi: Vec<f64>,
    pub c: f64,
    pub theta0: f64,
    pub lambda: f64,
    pub mu: f64,
    /// Sup-norm of the discrete profile residual.
    pub residual: f64,
    pub newton_steps: usize,
    /// Whether `phi'' >= -1e-8` held on `z <= 0`.
    pub convex_left: bool,
    pub asymptotics: Option<Asymptotics>,
}

/// Positive roots `lambda`, `mu` of the tail characteristic equations.
///
/// `lambda` solves `m(l) - 1 + fp0 - c l = 0` and `mu` solves `m(m) - 1 + fp1 + c m = 0`,
/// where `m` is the exponential moment of `j1`.
pub fn decay_rates(c: f64, fp0: f64, fp1: f64, j1: &Kernel1D) -> Result<(f64, f64)> {
    if !(c > 0.0) {
        return Err(Error::NonPositiveSpeed(c));
    }
    if !(fp0 < 0.0 && fp1 < 0.0) {
        return Err(invalid("decay_rates", "f'(0) and f'(1) must be negative"));
    }
    let left = |l: f64| j1.exp_moment(l) - 1.0 + fp0 - c * l;
    let right = |m: f64| j1.exp_moment(m) - 1.0 + fp1 + c * m;
    Ok((positive_root(left)?, positive_root(right)?))
}

fn positive_root<G: Fn(f64) -> f64>(g: G) -> Result<f64> {
    const LIMIT: f64 = 200.0;
    let g0 = g(0.0);
    assert!(g0 < 0.0, "characteristic function must start negative");
    let mut lo = 0.0;
    let mut hi = 1.0;
    while g(hi) <= 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > LIMIT {
            return Err(Error::NoRoot { limit: LIMIT });
        }
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Value of `phi` on the grid extended by the clamps 0 (left) and 1 (right).
#[inline]
fn clamped(phi: &[f64], j: isize) -> f64 {
    if j < 0 {
        0.0
    } else if j as usize >= phi.len() {
        1.0
    } else {
        phi[j as usize]
    }
}

/// Fourth-order central difference with the boundary clamps.
pub fn central_derivative(phi: &[f64], h: f64) -> Vec<f64> {
    (0..phi.len() as isize)
        .map(|i| {
            (-clamped(phi, i + 2) + 8.0 * clamped(phi, i + 1) - 8.0 * clamped(phi, i - 1)
                + clamped(phi, i - 2))
                / (12.0 * h)
        })
        .collect()
}

fn residual_vector(phi: &[f64], c: f64, h: f64, w: &[f64], r: usize, f: &Bistable) -> Vec<f64> {
    let dphi = central_derivative(phi, h);
    (0..phi.len())
        .map(|i| {
            let mut conv = 0.0;
            for (k, wk) in w.iter().enumerate() {
                conv += wk * clamped(phi, i as isize + r as isize - k as isize);
            }
            conv - phi[i] - c * dphi[i] + f.eval_extended(phi[i])
        })
        .collect()
}

fn l2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn sup(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Solves the profile equation by damped Newton on `(phi without the z = 0 node, c)`.
pub fn solve_profile(
    j1: &Kernel1D,
    f: &Bistable,
    z_max: f64,
    h: f64,
    init: Option<&WaveProfile>,
) -> Result<WaveProfile> {
    let l = j1.radius();
    if !(z_max >= 10.0 * l) {
        return Err(Error::Precondition(format!(
            "wave.z_max = {z_max} must be at least 10 L = {}",
            10.0 * l
        )));
    }
    if !(h > 0.0 && h <= l / 16.0 + 1e-15) {
        return Err(Error::Precondition(format!(
            "wave.h = {h} must lie in (0, L/16 = {}]",
            l / 16.0
        )));
    }
    let half = (z_max / h).round() as usize;
    if ((half as f64) * h - z_max).abs() > 1e-9 * z_max {
        return Err(invalid("wave.h", "z_max must be an integer multiple of h"));
    }
    let n = 2 * half + 1;
    let i0 = half;
    let theta0 = f.theta0();
    let (r, w) = j1.weights(h);

    let (mut phi, mut c) = match init {
        Some(p) => {
            if p.phi.len() != n {
                return Err(invalid("wave.init", "initial profile has a different grid"));
            }
            (p.phi.clone(), p.c)
        }
        None => {
            let shift = (2.0 * theta0 - 1.0).atanh();
            let phi = (0..n)
                .map(|i| 0.5 * (1.0 + ((i as f64 - i0 as f64) * h + shift).tanh()))
                .collect();
            let d = 0.5 * j1.second_moment();
            let c0 = (f.kappa() * d / 2.0).sqrt() * (1.0 - 2.0 * theta0);
            (phi, if c0 > 1e-3 { c0 } else { 0.05 })
        }
    };
    phi[i0] = theta0;

    let b = r.max(2);
    let col = |j: usize| if j < i0 { j } else { j - 1 };
    let mut res = residual_vector(&phi, c, h, &w, r, f);
    let mut norm = sup(&res);
    // the Newton direction is a descent direction for the 2-norm, not the sup-norm
    let mut merit = l2(&res);
    let mut steps = 0;
    let fd = [1.0, -8.0, 0.0, 8.0, -1.0];
    loop {
        if norm <= RESIDUAL_TARGET {
            break;
        }
        if steps >= MAX_NEWTON_STEPS {
            if norm <= RESIDUAL_TOL {
                break;
            }
            return Err(Error::NoConvergence {
                steps,
                residual: norm,
            });
        }
        steps += 1;
        let dphi = central_derivative(&phi, h);
        let mut jac = BorderedBand::new(n, b + 1, b);
        for i in 0..n {
            for (k, wk) in w.iter().enumerate() {
                let j = i as isize + r as isize - k as isize;
                if j >= 0 && (j as usize) < n && j as usize != i0 {
                    jac.add(i, col(j as usize), *wk);
                }
            }
            for (m, coef) in fd.iter().enumerate() {
                let j = i as isize + m as isize - 2;
                if *coef != 0.0 && j >= 0 && (j as usize) < n && j as usize != i0 {
                    jac.add(i, col(j as usize), -c * coef / (12.0 * h));
                }
            }
            if i != i0 {
                jac.add(i, col(i), -1.0 + f.deriv_extended(phi[i]));
            }
            jac.add(i, n - 1, -dphi[i]);
        }
        let rhs: Vec<f64> = res.iter().map(|v| -v).collect();
        let delta = jac.solve(rhs).ok_or(Error::NoConvergence {
            steps,
            residual: norm,
        })?;

        let mut step = 1.0;
        let mut accepted = false;
        for _ in 0..12 {
            let mut trial = phi.clone();
            for j in 0..n {
                if j != i0 {
                    trial[j] += step * delta[col(j)];
                }
            }
            let tc = c + step * delta[n - 1];
            let tres = residual_vector(&trial, tc, h, &w, r, f);
            let tmerit = l2(&tres);
            if tmerit < (1.0 - 1e-4 * step) * merit {
                phi = trial;
                c = tc;
                norm = sup(&tres);
                merit = tmerit;
                res = tres;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            if norm <= RESIDUAL_TOL {
                break;
            }
            return Err(Error::NoConvergence {
                steps,
                residual: norm,
            });
        }
    }
    if !(c > 0.0) {
        return Err(Error::NonPositiveSpeed(c));
    }
    let (lambda, mu) = decay_rates(c, f.fp0(), f.fp1(), j1)?;
    let convex_left = (1..i0).all(|i| (phi[i + 1] - 2.0 * phi[i] + phi[i - 1]) / (h * h) >= -1e-8);
    Ok(WaveProfile {
        h,
        z_max,
        phi,
        c,
        theta0,
        lambda,
        mu,
        residual: norm,
        newton_steps: steps,
        convex_left,
        asymptotics: None,
    })
}

/// Positive root of the linearization of the discrete scheme at 0 on `e^{l z}`.
fn discrete_left_rate(c: f64, fp0: f64, h: f64, w: &[f64], r: usize) -> Result<f64> {
    let g = |l: f64| {
        let conv: f64 = w
            .iter()
            .enumerate()
            .map(|(k, wk)| wk * (l * (r as f64 - k as f64) * h).exp())
            .sum();
        let d = (-(2.0 * l * h).exp() + 8.0 * (l * h).exp() - 8.0 * (-l * h).exp()
            + (-2.0 * l * h).exp())
            / (12.0 * h);
        conv - 1.0 + fp0 - c * d
    };
    positive_root(g)
}

/// Least-squares slope and intercept of `y` against `x`.
fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

fn min_max<I: Iterator<Item = f64>>(it: I) -> (f64, f64) {
    it.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    })
}

/// Fits the tail constants of the exponential bounds and the refined left-tail expansion.
///
/// The kernel must be the one the profile was solved with; its radius sets the
/// outer edge `z_max - 2 L` of the fit regions.
pub fn fit_asymptotics(profile: &WaveProfile, j1: &Kernel1D, f: &Bistable) -> Result<WaveProfile> {
    let p = profile;
    let kernel_radius = j1.radius();
    let kernel_weights = j1.weights(p.h);
    let fp0 = f.fp0();
    let dphi = p.derivative();
    let outer = p.z_max - 2.0 * kernel_radius;
    let left: Vec<usize> = (0..p.phi.len())
        .filter(|&i| {
            let z = p.z(i);
            z <= -TAIL_START && z >= -outer && p.phi[i] >= TAIL_FLOOR
        })
        .collect();
    let right: Vec<usize> = (0..p.phi.len())
        .filter(|&i| {
            let z = p.z(i);
            z >= TAIL_START && z <= outer && 1.0 - p.phi[i] >= TAIL_FLOOR
        })
        .collect();
    for nodes in [&left, &right] {
        if nodes.len() < MIN_FIT_NODES {
            return Err(Error::FitFailure {
                needed: MIN_FIT_NODES,
                found: nodes.len(),
            });
        }
    }
    let (lam, mu) = (p.lambda, p.mu);

    let zl: Vec<f64> = left.iter().map(|&i| p.z(i)).collect();
    let (lambda_fit, _) = linear_fit(&zl, &left.iter().map(|&i| p.phi[i].ln()).collect::<Vec<_>>());
    let zr: Vec<f64> = right.iter().map(|&i| p.z(i)).collect();
    let (neg_mu, _) = linear_fit(
        &zr,
        &right.iter().map(|&i| (1.0 - p.phi[i]).ln()).collect::<Vec<_>>(),
    );

    let (a0, b0) = min_max(left.iter().map(|&i| p.phi[i] * (-lam * p.z(i)).exp()));
    let (g0, d0) = min_max(left.iter().map(|&i| dphi[i] * (-lam * p.z(i)).exp()));
    let (a1, b1) = min_max(right.iter().map(|&i| (1.0 - p.phi[i]) * (mu * p.z(i)).exp()));
    let (g1, d1) = min_max(right.iter().map(|&i| dphi[i] * (mu * p.z(i)).exp()));

    // Refined expansion |phi - C e^{lh z}| <= K e^{(k + lh) z}. The grid profile decays
    // at the discrete rate lh, which differs from lam by O(h^2); using lam here would
    // leave a linear drift that swamps the correction term.
    let (r, w) = kernel_weights;
    let lh = discrete_left_rate(p.c, fp0, p.h, &w, r)?;
    let expansion: Vec<usize> = (0..p.phi.len())
        .filter(|&i| {
            let z = p.z(i);
            z <= -1.0 && z >= -outer && p.phi[i] >= TAIL_FLOOR
        })
        .collect();
    let ze: Vec<f64> = expansion.iter().map(|&i| p.z(i)).collect();
    let deepest = expansion[0];
    let c_phi = p.phi[deepest] * (-lh * p.z(deepest)).exp();
    let rem: Vec<f64> = expansion
        .iter()
        .map(|&i| (p.phi[i] - c_phi * (lh * p.z(i)).exp()).abs())
        .collect();
    let usable: Vec<usize> = (0..expansion.len())
        .filter(|&m| rem[m] >= 1e-8 * p.phi[expansion[m]])
        .collect();
    let mut k_phi = lh;
    if usable.len() >= 5 {
        let xs: Vec<f64> = usable.iter().map(|&m| ze[m]).collect();
        let ys: Vec<f64> = usable.iter().map(|&m| rem[m].ln()).collect();
        let (slope, _) = linear_fit(&xs, &ys);
        if slope - lh > 1e-3 {
            k_phi = slope - lh;
        }
    }
    let big_k_phi = 1.05
        * (0..expansion.len())
            .map(|m| rem[m] * (-(k_phi + lh) * ze[m]).exp())
            .fold(0.0, f64::max);

    let asym = Asymptotics {
        alpha0: 0.95 * a0,
        beta0: 1.05 * b0,
        alpha1: 0.95 * a1,
        beta1: 1.05 * b1,
        gamma0: 0.95 * g0,
        delta0: 1.05 * d0,
        gamma1: 0.95 * g1,
        delta1: 1.05 * d1,
        c_phi,
        k_phi,
        big_k_phi,
        lambda_h: lh,
        lambda0: 0.5 * lam.min(k_phi),
        lambda_fit,
        mu_fit: -neg_mu,
        left_nodes: left.len(),
        right_nodes: right.len(),
    };
    let mut out = profile.clone();
    out.asymptotics = Some(asym);
    Ok(out)
}

impl WaveProfile {
    pub fn len(&self) -> usize {
        self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }

    /// Grid node `z_i`.
    #[inline]
    pub fn z(&self, i: usize) -> f64 {
        -self.z_max + i as f64 * self.h
    }

    /// Index of the node `z = 0`.
    pub fn origin(&self) -> usize {
        (self.phi.len() - 1) / 2
    }

    /// `phi'` at the nodes by fourth-order central differences.
    pub fn derivative(&self) -> Vec<f64> {
        central_derivative(&self.phi, self.h)
    }

    /// Sup-norm residual of the discrete profile equation for the given kernel and reaction.
    pub fn residual_with(&self, j1: &Kernel1D, f: &Bistable) -> f64 {
        let (r, w) = j1.weights(self.h);
        sup(&residual_vector(&self.phi, self.c, self.h, &w, r, f))
    }

    /// Strictly increasing wherever `1 - phi` is resolvable above rounding level.
    pub fn is_strictly_monotone(&self) -> bool {
        self.phi
            .windows(2)
            .all(|p| p[1] > p[0] || 1.0 - p[0] <= SATURATION)
    }

    /// Cubic Hermite interpolant of `phi` using the nodal derivatives; clamped to 0 and 1 off-grid.
    pub fn interpolator(&self) -> ProfileInterp {
        ProfileInterp {
            z0: -self.z_max,
            h: self.h,
            phi: self.phi.clone(),
            dphi: self.derivative(),
        }
    }

    /// Serializes to CSV: one `#` header line of constants, then `z,phi,dphi` rows.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let _ = write!(
            s,
            "# c={:?},lambda={:?},mu={:?},theta0={:?},h={:?},z_max={:?},residual={:?},newton_steps={},convex_left={}",
            self.c,
            self.lambda,
            self.mu,
            self.theta0,
            self.h,
            self.z_max,
            self.residual,
            self.newton_steps,
            self.convex_left
        );
        if let Some(a) = &self.asymptotics {
            for (k, v) in Asymptotics::KEYS.iter().zip(a.values()) {
                let _ = write!(s, ",{k}={v:?}");
            }
            let _ = write!(s, ",left_nodes={},right_nodes={}", a.left_nodes, a.right_nodes);
        }
        s.push('\n');
        s.push_str("z,phi,dphi\n");
        let d = self.derivative();
        for i in 0..self.phi.len() {
            let _ = writeln!(s, "{:?},{:?},{:?}", self.z(i), self.phi[i], d[i]);
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .and_then(|l| l.strip_prefix("# "))
            .ok_or_else(|| Error::Parse("missing header line".into()))?;
        let mut kv = std::collections::HashMap::new();
        for item in header.split(',') {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad header item `{item}`")))?;
            kv.insert(k.trim().to_string(), v.trim().to_string());
        }
        let num = |k: &str| -> Result<f64> {
            kv.get(k)
                .ok_or_else(|| Error::Parse(format!("missing `{k}`")))?
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("{k}: {e}")))
        };
        let int = |k: &str| -> Result<usize> {
            kv.get(k)
                .ok_or_else(|| Error::Parse(format!("missing `{k}`")))?
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("{k}: {e}")))
        };
        let asymptotics = if kv.contains_key("alpha0") {
            let v: Vec<f64> = Asymptotics::KEYS
                .iter()
                .map(|k| num(k))
                .collect::<Result<_>>()?;
            Some(Asymptotics {
                alpha0: v[0],
                beta0: v[1],
                alpha1: v[2],
                beta1: v[3],
                gamma0: v[4],
                delta0: v[5],
                gamma1: v[6],
                delta1: v[7],
                c_phi: v[8],
                k_phi: v[9],
                big_k_phi: v[10],
                lambda_h: v[11],
                lambda0: v[12],
                lambda_fit: v[13],
                mu_fit: v[14],
                left_nodes: int("left_nodes")?,
                right_nodes: int("right_nodes")?,
            })
        } else {
            None
        };
        match lines.next() {
            Some("z,phi,dphi") => {}
            _ => return Err(Error::Parse("missing column header".into())),
        }
        let mut phi = Vec::new();
        for line in lines {
            if line.is_empty() {
                continue;
            }
            let v = line
                .split(',')
                .nth(1)
                .ok_or_else(|| Error::Parse(format!("bad row `{line}`")))?;
            phi.push(v.parse::<f64>().map_err(|e| Error::Parse(e.to_string()))?);
        }
        Ok(WaveProfile {
            h: num("h")?,
            z_max: num("z_max")?,
            phi,
            c: num("c")?,
            theta0: num("theta0")?,
            lambda: num("lambda")?,
            mu: num("mu")?,
            residual: num("residual")?,
            newton_steps: int("newton_steps")?,
            convex_left: kv.get("convex_left").map(|s| s == "true").unwrap_or(false),
            asymptotics,
        })
    }
}

/// Fast evaluator for `phi` and `phi'` at arbitrary arguments.
#[derive(Debug, Clone)]
pub struct ProfileInterp {
    z0: f64,
    h: f64,
    phi: Vec<f64>,
    dphi: Vec<f64>,
}

impl ProfileInterp {
    #[inline]
    pub fn eval(&self, z: f64) -> f64 {
        let s = (z - self.z0) / self.h;
        let n = self.phi.len();
        if s <= 0.0 {
            return if s == 0.0 { self.phi[0] } else { 0.0 };
        }
        if s >= (n - 1) as f64 {
            return if s == (n - 1) as f64 { self.phi[n - 1] } else { 1.0 };
        }
        let i = s.floor() as usize;
        let t = s - i as f64;
        let (p0, p1) = (self.phi[i], self.phi[i + 1]);
        let (m0, m1) = (self.dphi[i] * self.h, self.dphi[i + 1] * self.h);
        let t2 = t * t;
        let t3 = t2 * t;
        (2.0 * t3 - 3.0 * t2 + 1.0) * p0
            + (t3 - 2.0 * t2 + t) * m0
            + (-2.0 * t3 + 3.0 * t2) * p1
            + (t3 - t2) * m1
    }

    #[inline]
    pub fn deriv(&self, z: f64) -> f64 {
        let s = (z - self.z0) / self.h;
        let n = self.phi.len();
        if s < 0.0 || s > (n - 1) as f64 {
            return 0.0;
        }
        let i = (s.floor() as usize).min(n - 2);
        let t = s - i as f64;
        let (p0, p1) = (self.phi[i], self.phi[i + 1]);
        let (m0, m1) = (self.dphi[i] * self.h, self.dphi[i + 1] * self.h);
        let t2 = t * t;
        ((6.0 * t2 - 6.0 * t) * p0
            + (3.0 * t2 - 4.0 * t + 1.0) * m0
            + (-6.0 * t2 + 6.0 * t) * p1
            + (3.0 * t2 - 2.0 * t) * m1)
            / self.h
    }

    pub fn lower(&self) -> f64 {
        self.z0
    }

    pub fn upper(&self) -> f64 {
        self.z0 + (self.phi.len() - 1) as f64 * self.h
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::Kernel;

    fn setup() -> (Kernel1D, Bistable) {
        (
            Kernel::new(1, 1.0, 2).unwrap().as_1d().unwrap(),
            Bistable::cubic(0.25, 1.0).unwrap(),
        )
    }

    #[test]
    fn rejects_coarse_or_short_grids() {
        let (j1, f) = setup();
        assert!(solve_profile(&j1, &f, 5.0, 0.05, None).is_err());
        assert!(solve_profile(&j1, &f, 20.0, 0.1, None).is_err());
    }

    #[test]
    fn decay_rate_root_residual() {
        let (j1, _) = setup();
        let (l, m) = decay_rates(0.5, -0.25, -0.75, &j1).unwrap();
        assert!((j1.exp_moment(l) - 1.0 - 0.25 - 0.5 * l).abs() < 1e-10);
        assert!((j1.exp_moment(m) - 1.0 - 0.75 + 0.5 * m).abs() < 1e-10);
        assert!(decay_rates(-0.1, -0.25, -0.75, &j1).is_err());
    }

    #[test]
    fn solved_profile_meets_contract() {
        let (j1, f) = setup();
        let p = solve_profile(&j1, &f, 20.0, 0.0625, None).unwrap();
        assert!(p.residual <= RESIDUAL_TOL);
        assert!(p.c > 0.0);
        assert!(p.is_strictly_monotone());
        assert_eq!(p.phi[p.origin()], 0.25);
    }

    #[test]
    fn interpolator_reproduces_nodes() {
        let (j1, f) = setup();
        let p = solve_profile(&j1, &f, 20.0, 0.0625, None).unwrap();
        let it = p.interpolator();
        for i in (0..p.len()).step_by(37) {
            assert!((it.eval(p.z(i)) - p.phi[i]).abs() < 1e-15);
        }
        assert_eq!(it.eval(-100.0), 0.0);
        assert_eq!(it.eval(100.0), 1.0);
    }
}
