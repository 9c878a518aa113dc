//! Tilted sub/super-solutions `u-` and `u+` controlling the large-time behavior.

use rayon::prelude::*;

use super::floors::MidZone;
use super::zfn::ZFunction;
use crate::domain::{ExteriorGrid, Region};
use crate::error::{invalid, Error, Result};
use crate::traveling_wave::ProfileInterp;

/// Shape of the transverse tilt `theta(x', t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TiltForm {
    /// `beta t^{-alpha} e^{-|x'|^2 / (gamma t)}`
    Gaussian,
    /// `beta t^{-alpha} e^{-|x'| / (gamma t)}`
    Exponential,
}

impl std::str::FromStr for TiltForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" => Ok(TiltForm::Gaussian),
            "exponential" => Ok(TiltForm::Exponential),
            _ => Err(invalid("certify.tilt", format!("unknown tilt form `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LargeTimeParams {
    pub beta: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub beta_plus: f64,
    pub alpha_plus: f64,
    pub k_z: f64,
    pub t_eps: f64,
    pub eps: f64,
    pub tilt: TiltForm,
}

impl LargeTimeParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.5 && self.alpha < 1.0) {
            return Err(invalid("certify.alpha", format!("{} is outside (1/2, 1)", self.alpha)));
        }
        if !(self.alpha_plus >= 0.5 && self.alpha_plus < 1.0) {
            return Err(invalid(
                "certify.alpha_plus",
                format!("{} is outside [1/2, 1)", self.alpha_plus),
            ));
        }
        if !(self.gamma > 1.0) {
            return Err(invalid("certify.gamma", format!("{} must exceed 1", self.gamma)));
        }
        if !(self.beta > 0.0 && self.beta_plus > 0.0) {
            return Err(invalid("certify.beta", "tilt amplitudes must be positive"));
        }
        if !(self.k_z > 0.0 && self.k_z.is_finite()) {
            return Err(invalid("certify.k_z", format!("{} must be positive", self.k_z)));
        }
        if !(self.eps > 0.0) {
            return Err(invalid("certify.eps", format!("{} must be positive", self.eps)));
        }
        Ok(())
    }
}

/// `beta t^{-alpha} g(x', t)` and its time derivative.
fn tilt(form: TiltForm, beta: f64, alpha: f64, gamma: f64, xp: f64, t: f64) -> (f64, f64) {
    let (s, ds) = match form {
        TiltForm::Gaussian => (xp * xp, xp * xp),
        TiltForm::Exponential => (xp.abs(), xp.abs()),
    };
    let th = beta * t.powf(-alpha) * (-s / (gamma * t)).exp();
    (th, th * (-alpha / t + ds / (gamma * t * t)))
}

/// Evaluator for `u-` and `u+`.
#[derive(Debug, Clone)]
pub struct LargeTime {
    pub profile: ProfileInterp,
    pub c: f64,
    pub params: LargeTimeParams,
    pub z: ZFunction,
}

impl LargeTime {
    pub fn new(profile: ProfileInterp, c: f64, params: LargeTimeParams, z: ZFunction) -> Result<Self> {
        params.validate()?;
        Ok(LargeTime {
            profile,
            c,
            params,
            z,
        })
    }

    fn check(&self, t: f64) -> Result<()> {
        if t < 1.0 {
            return Err(Error::Domain(format!("t = {t} precedes 1")));
        }
        Ok(())
    }

    /// `Z(t) = K_z int_0^t z`.
    pub fn big_z(&self, t: f64) -> f64 {
        self.params.k_z * self.z.integral(t)
    }

    fn base(&self, x1: f64, t: f64) -> f64 {
        x1 + self.c * (t - 1.0 + self.params.t_eps)
    }

    /// Front argument of `u-` at a fixed `Z` value.
    pub(crate) fn xi_minus_with(&self, x: [f64; 2], t: f64, big_z: f64) -> f64 {
        let p = &self.params;
        self.base(x[0], t) - tilt(p.tilt, p.beta, p.alpha, p.gamma, x[1], t).0 - big_z
    }

    pub(crate) fn psi_plus_with(&self, x: [f64; 2], t: f64, big_z: f64) -> f64 {
        let p = &self.params;
        self.base(x[0], t) + tilt(p.tilt, p.beta_plus, p.alpha_plus, p.gamma, x[1], t).0 + big_z
    }

    pub fn u_minus(&self, x: [f64; 2], t: f64) -> Result<f64> {
        self.check(t)?;
        let bz = self.big_z(t);
        Ok(self.profile.eval(self.xi_minus_with(x, t, bz)) - self.z.value(t))
    }

    pub fn u_plus(&self, x: [f64; 2], t: f64) -> Result<f64> {
        self.check(t)?;
        let bz = self.big_z(t);
        Ok(self.profile.eval(self.psi_plus_with(x, t, bz)) + self.z.value(t))
    }

    pub(crate) fn u_minus_t(&self, x: [f64; 2], t: f64, big_z: f64) -> f64 {
        let p = &self.params;
        let (_, th_t) = tilt(p.tilt, p.beta, p.alpha, p.gamma, x[1], t);
        let speed = self.c - th_t - p.k_z * self.z.value(t);
        speed * self.profile.deriv(self.xi_minus_with(x, t, big_z)) - self.z.deriv(t)
    }

    pub(crate) fn u_plus_t(&self, x: [f64; 2], t: f64, big_z: f64) -> f64 {
        let p = &self.params;
        let (_, th_t) = tilt(p.tilt, p.beta_plus, p.alpha_plus, p.gamma, x[1], t);
        let speed = self.c + th_t + p.k_z * self.z.value(t);
        speed * self.profile.deriv(self.psi_plus_with(x, t, big_z)) + self.z.deriv(t)
    }
}

/// Sup-ratios bounding the tilt and obstacle corrections of the nonlocal term by
/// `t^{-alpha-1} phi'`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TiltConstants {
    /// `C'` for the sub-solution tilt.
    pub c_prime: f64,
    /// `C^K` for the sub-solution tilt.
    pub c_k: f64,
    /// `M'` for the super-solution tilt (tilt and obstacle together).
    pub m_prime: f64,
}

/// Smallest `phi'` at which the ratios are sampled.
pub const RATIO_FLOOR: f64 = 1e-8;

#[allow(clippy::too_many_arguments)]
fn tilt_ratios(
    grid: &ExteriorGrid,
    profile: &ProfileInterp,
    form: TiltForm,
    beta: f64,
    alpha: f64,
    gamma: f64,
    sign: f64,
    t: f64,
    shift: f64,
    obstacle_mass: &[f64],
    marginal: &[f64],
) -> (f64, f64, f64) {
    let arg = |x: [f64; 2]| x[0] + shift + sign * tilt(form, beta, alpha, gamma, x[1], t).0;
    let full = grid.convolve_padded(&grid.sample_padded_region(|x| profile.eval(arg(x)), Region::All));
    let in_k = if grid.obstacle().is_empty() {
        vec![0.0; grid.len()]
    } else {
        grid.convolve_padded(&grid.sample_padded_region(|x| profile.eval(arg(x)), Region::Obstacle))
    };
    let r = grid.ghost_width() as f64;
    let h = grid.h();
    let scale = t.powf(-alpha - 1.0);
    (0..grid.len())
        .into_par_iter()
        .filter(|&k| grid.is_exterior(k))
        .map(|k| {
            let x = grid.center(k);
            let a = arg(x);
            let dphi = profile.deriv(a);
            if dphi < RATIO_FLOOR {
                return (0.0, 0.0, 0.0);
            }
            let u = profile.eval(a);
            let d_tilt = full[k] - u;
            let d_flat: f64 = marginal
                .iter()
                .enumerate()
                .map(|(i, m)| m * profile.eval(a - (i as f64 - r) * h))
                .sum::<f64>()
                - u;
            let k_part = in_k[k] - obstacle_mass[k] * u;
            let w = scale * dphi;
            (
                (d_flat - d_tilt) / w,
                -k_part / w,
                (d_tilt - d_flat - k_part) / w,
            )
        })
        .reduce(|| (0.0, 0.0, 0.0), |p, q| (p.0.max(q.0), p.1.max(q.1), p.2.max(q.2)))
}

/// Maximizes the correction ratios over `times` and front offsets sweeping the box.
pub fn tilt_constants(
    grid: &ExteriorGrid,
    profile: &ProfileInterp,
    params: &LargeTimeParams,
    times: &[f64],
) -> TiltConstants {
    let l = grid.kernel().radius();
    let b = grid.bbox();
    let w = 2 * grid.ghost_width() + 1;
    let stencil = grid.convolver().stencil();
    let marginal: Vec<f64> = if grid.dim() == 1 {
        stencil.to_vec()
    } else {
        (0..w).map(|a| stencil[a * w..(a + 1) * w].iter().sum()).collect()
    };
    let obstacle_mass = if grid.obstacle().is_empty() {
        vec![0.0; grid.len()]
    } else {
        grid.convolve_padded(&grid.sample_padded_region(|_| 1.0, Region::Obstacle))
    };
    let lo = b.lower[0] + 2.0 * l;
    let hi = b.upper[0] - 2.0 * l;
    let count = ((hi - lo) / (0.5 * l)).ceil().max(1.0) as usize;
    let mut out = TiltConstants {
        c_prime: 0.0,
        c_k: 0.0,
        m_prime: 0.0,
    };
    let p = params;
    for &t in times {
        for i in 0..=count {
            let front = lo + (hi - lo) * i as f64 / count as f64;
            let (cp, ck, _) = tilt_ratios(
                grid, profile, p.tilt, p.beta, p.alpha, p.gamma, -1.0, t, -front, &obstacle_mass, &marginal,
            );
            let (_, _, mp) = tilt_ratios(
                grid,
                profile,
                p.tilt,
                p.beta_plus,
                p.alpha_plus,
                p.gamma,
                1.0,
                t,
                -front,
                &obstacle_mass,
                &marginal,
            );
            out.c_prime = out.c_prime.max(cp);
            out.c_k = out.c_k.max(ck);
            out.m_prime = out.m_prime.max(mp);
        }
    }
    out
}

/// Drift-gain floors for `u-` and `u+` (each already solved for `K_z`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftFloors {
    pub minus: f64,
    pub plus: f64,
}

impl DriftFloors {
    /// Fails unless `eta_z < sigma / 2`, the damping the flat zones can absorb.
    pub fn compute(mid: &MidZone, tilt: &TiltConstants, params: &LargeTimeParams, z: &ZFunction) -> Result<Self> {
        let eta_z = z.params().eta_z;
        if eta_z >= 0.5 * mid.sigma {
            return Err(invalid(
                "zfn.eta",
                format!("{eta_z} must stay below sigma / 2 = {}", 0.5 * mid.sigma),
            ));
        }
        let k0 = z.k0();
        let minus = (mid.delta_top
            + 1.5 * eta_z
            + (params.alpha * params.beta + tilt.c_k + tilt.c_prime) * mid.dphi_max / k0)
            / mid.tau0;
        let plus = (mid.delta_prime + eta_z) / mid.tau0
            + (params.alpha_plus * params.beta_plus + tilt.m_prime) / k0;
        Ok(DriftFloors { minus, plus })
    }

    /// The gain used by the certificates: twice the larger floor.
    pub fn gain(&self) -> f64 {
        2.0 * self.minus.max(self.plus)
    }
}
