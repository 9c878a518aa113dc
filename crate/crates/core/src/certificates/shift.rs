//! The phase shift `xi(t)` and the two-front certificates `W-` and `W+`.

use crate::error::{invalid, Error, Result};
use crate::traveling_wave::ProfileInterp;

/// Amplitude `M`, rate `lambda0` and speed `c` of the shift `xi(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftParams {
    pub m: f64,
    pub lambda0: f64,
    pub c: f64,
}

impl ShiftParams {
    pub fn new(m: f64, lambda0: f64, c: f64) -> Result<Self> {
        if !(m > 0.0 && m.is_finite()) {
            return Err(invalid("certify.m", format!("{m} must be positive")));
        }
        if !(lambda0 > 0.0) {
            return Err(invalid("certify.lambda0", format!("{lambda0} must be positive")));
        }
        if !(c > 0.0) {
            return Err(Error::NonPositiveSpeed(c));
        }
        Ok(ShiftParams { m, lambda0, c })
    }

    /// Blow-up horizon `T = ln(c / (c + M)) / (lambda0 c)`.
    pub fn t_cap(&self) -> f64 {
        (self.c / (self.c + self.m)).ln() / (self.lambda0 * self.c)
    }

    fn check(&self, t: f64) -> Result<()> {
        let cap = self.t_cap();
        if t > cap + 1e-12 * cap.abs().max(1.0) {
            return Err(Error::Domain(format!("t = {t} exceeds T = {cap}")));
        }
        Ok(())
    }

    fn q(&self, t: f64) -> f64 {
        (self.m / self.c) * (self.lambda0 * self.c * t).exp()
    }

    /// `xi(t) = -ln(1 - (M/c) e^{lambda0 c t}) / lambda0`.
    pub fn xi(&self, t: f64) -> Result<f64> {
        self.check(t)?;
        Ok(-(-self.q(t)).ln_1p() / self.lambda0)
    }

    /// `xi'(t) = M e^{lambda0 (c t + xi)}`.
    pub fn xi_dot(&self, t: f64) -> Result<f64> {
        self.check(t)?;
        let q = self.q(t);
        Ok(self.m * (self.lambda0 * self.c * t).exp() / (1.0 - q))
    }
}

/// Evaluator for `W-` and `W+` built on a profile interpolant.
#[derive(Debug, Clone)]
pub struct TwoFront {
    pub profile: ProfileInterp,
    pub params: ShiftParams,
}

impl TwoFront {
    pub fn new(profile: ProfileInterp, params: ShiftParams) -> Self {
        TwoFront { profile, params }
    }

    /// `phi(x1 + ct - xi) - phi(-x1 + ct - xi)` for `x1 >= 0`, else 0.
    pub fn w_minus(&self, x: [f64; 2], t: f64) -> Result<f64> {
        let xi = self.params.xi(t)?;
        Ok(self.w_minus_with(x[0], t, xi))
    }

    /// `phi(x1 + ct + xi) + phi(-x1 + ct + xi)` for `x1 >= 0`, else `2 phi(ct + xi)`.
    pub fn w_plus(&self, x: [f64; 2], t: f64) -> Result<f64> {
        let xi = self.params.xi(t)?;
        Ok(self.w_plus_with(x[0], t, xi))
    }

    pub(crate) fn w_minus_with(&self, x1: f64, t: f64, xi: f64) -> f64 {
        if x1 < 0.0 {
            return 0.0;
        }
        let s = self.params.c * t - xi;
        self.profile.eval(x1 + s) - self.profile.eval(-x1 + s)
    }

    pub(crate) fn w_plus_with(&self, x1: f64, t: f64, xi: f64) -> f64 {
        let s = self.params.c * t + xi;
        if x1 < 0.0 {
            return 2.0 * self.profile.eval(s);
        }
        self.profile.eval(x1 + s) + self.profile.eval(-x1 + s)
    }

    pub(crate) fn w_minus_t(&self, x1: f64, t: f64, xi: f64, xi_dot: f64) -> f64 {
        if x1 < 0.0 {
            return 0.0;
        }
        let s = self.params.c * t - xi;
        (self.params.c - xi_dot) * (self.profile.deriv(x1 + s) - self.profile.deriv(-x1 + s))
    }

    pub(crate) fn w_plus_t(&self, x1: f64, t: f64, xi: f64, xi_dot: f64) -> f64 {
        let s = self.params.c * t + xi;
        let v = self.params.c + xi_dot;
        if x1 < 0.0 {
            return 2.0 * v * self.profile.deriv(s);
        }
        v * (self.profile.deriv(x1 + s) + self.profile.deriv(-x1 + s))
    }
}
