//! The shifted planar pair that squeezes a solution onto the traveling wave.

use crate::error::{invalid, Error, Result};
use crate::nonlinearity::Bistable;
use crate::traveling_wave::{ProfileInterp, WaveProfile};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarSqueezeParams {
    pub omega: f64,
    pub eta: f64,
    /// Half-width with `phi <= eta/2` left of `-A` and `phi >= 1 - eta/2` right of `A`.
    pub a: f64,
    /// `min phi'` on `[-A, A]`.
    pub delta: f64,
    pub eps: f64,
    pub t0: f64,
    /// `||f'||`: Lipschitz constant of the extended nonlinearity.
    pub lip: f64,
}

impl PlanarSqueezeParams {
    /// Recomputes every constant from `f` and `profile`; `eps` defaults to `eta / 4`.
    pub fn from_profile(profile: &WaveProfile, f: &Bistable, eps: Option<f64>, t0: f64) -> Result<Self> {
        let omega = 0.5 * f.fp0().abs().min(f.fp1().abs());
        let eta = f.flat_zone(omega);
        if !(eta > 0.0) {
            return Err(Error::Precondition("no flat zone where f' <= -omega".into()));
        }
        let eps = eps.unwrap_or(0.25 * eta);
        if !(eps > 0.0 && eps < 0.5 * eta) {
            return Err(invalid("certify.eps", format!("{eps} must lie in (0, eta/2 = {})", 0.5 * eta)));
        }
        let n = profile.len();
        let left = (0..n)
            .rev()
            .find(|&i| profile.phi[i] <= 0.5 * eta)
            .ok_or_else(|| Error::Precondition("profile never drops below eta/2".into()))?;
        let right = (0..n)
            .find(|&i| profile.phi[i] >= 1.0 - 0.5 * eta)
            .ok_or_else(|| Error::Precondition("profile never exceeds 1 - eta/2".into()))?;
        let a = (-profile.z(left)).max(profile.z(right));
        let d = profile.derivative();
        let delta = (0..n)
            .filter(|&i| profile.z(i).abs() <= a)
            .map(|i| d[i])
            .fold(f64::INFINITY, f64::min);
        if !(delta > 0.0) {
            return Err(Error::DegenerateProfile);
        }
        Ok(PlanarSqueezeParams {
            omega,
            eta,
            a,
            delta,
            eps,
            t0,
            lip: f.lipschitz(),
        })
    }

    /// `2 eps ||f'|| / (delta omega)`: the limiting shift of the pair.
    pub fn shift_amplitude(&self) -> f64 {
        2.0 * self.eps * self.lip / (self.delta * self.omega)
    }
}

/// Sub-solution `phi(xi-) - eps e^{-omega (t - t0)}` and super-solution
/// `phi(xi+) + eps e^{-omega (t - t0)}`.
#[derive(Debug, Clone)]
pub struct PlanarPair {
    pub profile: ProfileInterp,
    pub c: f64,
    pub params: PlanarSqueezeParams,
}

impl PlanarPair {
    pub fn new(profile: ProfileInterp, c: f64, params: PlanarSqueezeParams) -> Self {
        PlanarPair { profile, c, params }
    }

    fn check(&self, t: f64) -> Result<()> {
        if t < self.params.t0 {
            return Err(Error::Domain(format!("t = {t} precedes t0 = {}", self.params.t0)));
        }
        Ok(())
    }

    fn decay(&self, t: f64) -> f64 {
        (-self.params.omega * (t - self.params.t0)).exp()
    }

    /// `xi_{+-} = x1 + c t +- S (1 - e^{-omega (t - t0)})`.
    pub fn argument(&self, x1: f64, t: f64, sign: f64) -> f64 {
        x1 + self.c * t + sign * self.params.shift_amplitude() * (1.0 - self.decay(t))
    }

    pub fn lower(&self, x1: f64, t: f64) -> Result<f64> {
        self.check(t)?;
        Ok(self.profile.eval(self.argument(x1, t, -1.0)) - self.params.eps * self.decay(t))
    }

    pub fn upper(&self, x1: f64, t: f64) -> Result<f64> {
        self.check(t)?;
        Ok(self.profile.eval(self.argument(x1, t, 1.0)) + self.params.eps * self.decay(t))
    }

    /// Time derivative of the lower (`sign = -1`) or upper (`sign = 1`) member.
    pub(crate) fn time_derivative(&self, x1: f64, t: f64, sign: f64) -> f64 {
        let p = &self.params;
        let e = self.decay(t);
        let speed = self.c + sign * p.shift_amplitude() * p.omega * e;
        speed * self.profile.deriv(self.argument(x1, t, sign)) - sign * p.eps * p.omega * e
    }
}
