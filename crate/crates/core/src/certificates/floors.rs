//! Explicit lower bounds for the certificate amplitudes.
//!
//! Every "M sufficiently large" in the sub/super-solution arguments is replaced by
//! the concrete constant its case analysis needs; the certificates then use twice the
//! largest one.

use crate::error::{Error, Result};
use crate::nonlinearity::Bistable;
use crate::traveling_wave::{WaveProfile, TAIL_FLOOR};

/// Constants entering the amplitude floor of `xi(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftFloors {
    pub lf: f64,
    pub k3: f64,
    pub k4: f64,
    pub l0: f64,
    pub l2: f64,
    pub c0: f64,
    /// `L_f beta0 / k3` (region between the fronts of `W-`).
    pub m1: f64,
    /// `L_f alpha0 e^{mu L0} / gamma1` (right of both fronts, `W+`).
    pub m2: f64,
    /// `(L_f beta0 + C0) / (2 gamma0)` (between the fronts, `W+`).
    pub m3: f64,
    /// `C0 / (2 gamma0)` (left half-plane, `W+`).
    pub m4: f64,
}

impl ShiftFloors {
    pub fn floor(&self) -> f64 {
        self.m1.max(self.m2).max(self.m3).max(self.m4)
    }

    /// The amplitude used by the certificates: twice the floor.
    pub fn amplitude(&self) -> f64 {
        2.0 * self.floor()
    }

    pub const KEYS: [&'static str; 10] = ["lf", "k3", "k4", "l0", "l2", "c0", "m1", "m2", "m3", "m4"];

    pub fn values(&self) -> [f64; 10] {
        [
            self.lf, self.k3, self.k4, self.l0, self.l2, self.c0, self.m1, self.m2, self.m3, self.m4,
        ]
    }
}

/// Mid-zone constants of the large-time certificates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MidZone {
    /// `min(|f'(0)|, |f'(1)|) / 2`.
    pub sigma: f64,
    /// Flat-zone width: `f' <= -sigma` on `[0, eta] U [1 - eta, 1]`.
    pub eta: f64,
    /// `min phi'` where `phi` lies in `[eta, 1 - eta]`.
    pub tau0: f64,
    /// `max f'` on `[eta, 1 - eta]`.
    pub delta_top: f64,
    /// `-min f'` on `[0, 1]`.
    pub delta_prime: f64,
    /// `sup phi'`.
    pub dphi_max: f64,
}

/// Smallest `z` such that `pred(phi(s))` holds at every node `s >= z`.
fn right_threshold(profile: &WaveProfile, pred: impl Fn(f64) -> bool) -> Result<f64> {
    let n = profile.len();
    let mut first = n;
    for i in (0..n).rev() {
        if pred(profile.phi[i]) {
            first = i;
        } else {
            break;
        }
    }
    if first == n {
        return Err(Error::Precondition(
            "profile never reaches the separation threshold on the grid".into(),
        ));
    }
    Ok(profile.z(first))
}

/// `min (phi'(x1) - phi'(x2)) / (phi(x1) - phi(x2))` over node pairs `x2 < x1 <= 0`.
pub fn k3_constant(profile: &WaveProfile) -> Result<f64> {
    if !profile.is_strictly_monotone() {
        return Err(Error::DegenerateProfile);
    }
    let d = profile.derivative();
    let o = profile.origin();
    let nodes: Vec<usize> = (0..=o).filter(|&i| profile.phi[i] >= TAIL_FLOOR).collect();
    let mut k3 = f64::INFINITY;
    for (a, &i1) in nodes.iter().enumerate() {
        for &i2 in &nodes[..a] {
            let dp = profile.phi[i1] - profile.phi[i2];
            if dp > 0.0 {
                k3 = k3.min((d[i1] - d[i2]) / dp);
            }
        }
    }
    if !(k3 > 0.0 && k3.is_finite()) {
        return Err(Error::Precondition(format!("k3 = {k3} is not positive")));
    }
    Ok(k3)
}

/// Floors for the shift amplitude `M`, using the fitted tail constants of `profile`.
pub fn shift_floors(profile: &WaveProfile, f: &Bistable, kernel_radius: f64) -> Result<ShiftFloors> {
    let a = profile
        .asymptotics
        .as_ref()
        .ok_or_else(|| Error::Precondition("profile has no fitted asymptotics".into()))?;
    let lf = f.lf_constant();
    let (fp0, fp1) = (f.fp0(), f.fp1());
    let k3 = k3_constant(profile)?;
    let k4 = 0.45 * (fp1 - fp0).abs();
    let mid = 0.5 * (fp0 + fp1);
    let l0 = right_threshold(profile, |u| f.deriv(u) <= mid)?;
    let l2 = right_threshold(profile, |u| f.deriv(u) <= fp0 - k4)?;
    let c0 = a.big_k_phi * (2.0 + 2.0 * (profile.lambda * kernel_radius).cosh());
    Ok(ShiftFloors {
        lf,
        k3,
        k4,
        l0,
        l2,
        c0,
        m1: lf * a.beta0 / k3,
        m2: lf * a.alpha0 * (profile.mu * l0).exp() / a.gamma1,
        m3: (lf * a.beta0 + c0) / (2.0 * a.gamma0),
        m4: c0 / (2.0 * a.gamma0),
    })
}

/// Mid-zone constants for the flat-zone margin `sigma = min(|f'(0)|, |f'(1)|) / 2`.
pub fn mid_zone(profile: &WaveProfile, f: &Bistable) -> Result<MidZone> {
    if !profile.is_strictly_monotone() {
        return Err(Error::DegenerateProfile);
    }
    let sigma = 0.5 * f.fp0().abs().min(f.fp1().abs());
    let eta = f.flat_zone(sigma);
    if !(eta > 0.0) {
        return Err(Error::Precondition("no flat zone where f' <= -sigma".into()));
    }
    let d = profile.derivative();
    let mut tau0 = f64::INFINITY;
    for (p, dp) in profile.phi.iter().zip(&d) {
        if *p >= eta && *p <= 1.0 - eta {
            tau0 = tau0.min(*dp);
        }
    }
    let n = 10_000;
    let mut delta_top = f64::NEG_INFINITY;
    for i in 0..=n {
        let u = eta + (1.0 - 2.0 * eta) * i as f64 / n as f64;
        delta_top = delta_top.max(f.deriv(u));
    }
    let dphi_max = d.iter().cloned().fold(0.0, f64::max);
    Ok(MidZone {
        sigma,
        eta,
        tau0,
        delta_top,
        delta_prime: -f.min_fprime(),
        dphi_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k3_rejects_non_monotone_profiles() {
        let p = WaveProfile {
            h: 0.5,
            z_max: 1.0,
            phi: vec![0.1, 0.3, 0.2, 0.6, 0.9],
            c: 0.1,
            theta0: 0.2,
            lambda: 1.0,
            mu: 1.0,
            residual: 0.0,
            newton_steps: 0,
            convex_left: false,
            asymptotics: None,
        };
        assert_eq!(k3_constant(&p), Err(Error::DegenerateProfile));
    }
}
