//! The decaying correction `z(t)` used by the large-time certificates.

use crate::error::{invalid, Error, Result};
use crate::quad::simpson;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZParams {
    pub eta_z: f64,
    pub eps1: f64,
    pub t1: f64,
}

impl ZParams {
    pub fn new(eta_z: f64, eps1: f64, t1: f64) -> Result<Self> {
        if !(eta_z > 0.0 && eta_z < std::f64::consts::LN_2) {
            return Err(invalid("zfn.eta", format!("{eta_z} is outside (0, ln 2)")));
        }
        if !(eps1 > 0.0 && eps1.is_finite()) {
            return Err(invalid("zfn.eps1", format!("{eps1} must be positive")));
        }
        if !(t1 >= 0.0 && t1.is_finite()) {
            return Err(invalid("zfn.t1", format!("{t1} must be non-negative")));
        }
        Ok(ZParams { eta_z, eps1, t1 })
    }

    /// `l_P = 1 / eta_z`.
    pub fn l_p(&self) -> f64 {
        1.0 / self.eta_z
    }
}

/// `P-(x) = 1 - (eta^2 / 3)(x + 1/eta)^2` on `[-l_P, 0]`.
pub fn p_minus(x: f64, eta: f64) -> Result<f64> {
    if !(x >= -1.0 / eta - 1e-12 && x <= 1e-12) {
        return Err(Error::Domain(format!("P- is defined on [-1/eta, 0], got {x}")));
    }
    Ok(p_minus_raw(x, eta))
}

pub fn p_minus_deriv(x: f64, eta: f64) -> Result<f64> {
    p_minus(x, eta)?;
    Ok(p_minus_d_raw(x, eta))
}

/// `P+(x) = (nu eta / 3)(x - 1/eta)^2 + 2/3 - nu / (3 eta)` on `[0, l_P]`.
pub fn p_plus(x: f64, eta: f64, nu: f64) -> Result<f64> {
    if !(x >= -1e-12 && x <= 1.0 / eta + 1e-12) {
        return Err(Error::Domain(format!("P+ is defined on [0, 1/eta], got {x}")));
    }
    Ok(p_plus_raw(x, eta, nu))
}

pub fn p_plus_deriv(x: f64, eta: f64, nu: f64) -> Result<f64> {
    p_plus(x, eta, nu)?;
    Ok(p_plus_d_raw(x, eta, nu))
}

fn p_minus_raw(x: f64, eta: f64) -> f64 {
    let s = x + 1.0 / eta;
    1.0 - eta * eta * s * s / 3.0
}

fn p_minus_d_raw(x: f64, eta: f64) -> f64 {
    -2.0 * eta * eta * (x + 1.0 / eta) / 3.0
}

fn p_plus_raw(x: f64, eta: f64, nu: f64) -> f64 {
    let s = x - 1.0 / eta;
    nu * eta * s * s / 3.0 + 2.0 / 3.0 - nu / (3.0 * eta)
}

fn p_plus_d_raw(x: f64, eta: f64, nu: f64) -> f64 {
    2.0 * nu * eta * (x - 1.0 / eta) / 3.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Piece {
    /// `scale * z1(t - origin)`
    Z1 { scale: f64, origin: f64 },
    /// `scale * (3/2) P+(t - origin)`
    PPlus { scale: f64, origin: f64 },
    /// Cubic Hermite from `lo` to `hi` with zero end slopes.
    Bridge { a: f64, b: f64, lo: f64, hi: f64 },
    /// `eps1 P-(t - t1)`
    PMinus { scale: f64, origin: f64 },
}

/// Piecewise `C^1` function with `z' >= -eta_z z`, `z(0) = eps1` and a `(1+t)^{-3/2}` tail.
#[derive(Debug, Clone)]
pub struct ZFunction {
    params: ZParams,
    nu: f64,
    k0: f64,
    /// Start of each piece; the last piece extends to infinity.
    starts: Vec<f64>,
    pieces: Vec<Piece>,
    /// `int_0^{starts[i]} z`.
    cumulative: Vec<f64>,
    integral_bound: f64,
}

impl ZFunction {
    pub fn new(params: ZParams) -> Self {
        let eta = params.eta_z;
        let eps1 = params.eps1;
        let t1 = params.t1;
        let t_star = 1.5 / eta - 1.0;
        let (starts, pieces, nu, k0) = if t1 < 3.0 / eta {
            (
                vec![0.0],
                vec![Piece::Z1 {
                    scale: eps1,
                    origin: 0.0,
                }],
                eta,
                eps1 * z1(t1, eta),
            )
        } else {
            let s = t1 - 3.0 / eta;
            let nu = if s <= t_star { eta } else { 1.5 / (1.0 + s) };
            let scale = eps1 * z1(s, eta);
            let lo = scale * 1.5 * p_plus_raw(1.0 / eta, eta, nu);
            (
                vec![0.0, s, t1 - 2.0 / eta, t1 - 1.0 / eta, t1],
                vec![
                    Piece::Z1 {
                        scale: eps1,
                        origin: 0.0,
                    },
                    Piece::PPlus { scale, origin: s },
                    Piece::Bridge {
                        a: t1 - 2.0 / eta,
                        b: t1 - 1.0 / eta,
                        lo,
                        hi: eps1,
                    },
                    Piece::PMinus {
                        scale: eps1,
                        origin: t1,
                    },
                    Piece::Z1 {
                        scale: 2.0 / 3.0 * eps1,
                        origin: t1,
                    },
                ],
                nu,
                2.0 / 3.0 * eps1,
            )
        };
        let mut z = ZFunction {
            params,
            nu,
            k0,
            starts,
            pieces,
            cumulative: Vec::new(),
            integral_bound: 0.0,
        };
        let mut acc = 0.0;
        z.cumulative.push(0.0);
        for i in 1..z.starts.len() {
            acc += z.piece_integral(i - 1, z.starts[i - 1], z.starts[i]);
            z.cumulative.push(acc);
        }
        // tail: the last piece is a scaled z1; integrate to its power-law switch, then exactly
        let last = z.pieces.len() - 1;
        let (scale, origin) = match z.pieces[last] {
            Piece::Z1 { scale, origin } => (scale, origin),
            _ => unreachable!("last piece is always z1"),
        };
        let switch = origin + t_star;
        let head = z.piece_integral(last, z.starts[last], switch);
        let tail = scale * z1_constant(eta) * 2.0 / (1.0 + t_star).sqrt();
        z.integral_bound = (acc + head + tail) * (1.0 + 1e-9);
        z
    }

    pub fn params(&self) -> ZParams {
        self.params
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// Constant with `z(t) >= K0 (1 + t - t1)^{-3/2}` for `t >= t1`.
    pub fn k0(&self) -> f64 {
        self.k0
    }

    /// Strict upper bound on `int_0^inf z`.
    pub fn integral_bound(&self) -> f64 {
        self.integral_bound
    }

    pub fn is_five_piece(&self) -> bool {
        self.pieces.len() == 5
    }

    /// Piece boundaries together with the internal switch points of `z1`.
    pub fn junctions(&self) -> Vec<f64> {
        let t_star = 1.5 / self.params.eta_z - 1.0;
        let mut out: Vec<f64> = self.starts[1..].to_vec();
        for (i, p) in self.pieces.iter().enumerate() {
            if let Piece::Z1 { origin, .. } = p {
                let j = origin + t_star;
                let end = self.starts.get(i + 1).copied().unwrap_or(f64::INFINITY);
                if j > self.starts[i] && j < end {
                    out.push(j);
                }
            }
        }
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out
    }

    fn piece_index(&self, t: f64) -> usize {
        self.starts.iter().rposition(|&s| s <= t).unwrap_or(0)
    }

    fn piece_eval(&self, i: usize, t: f64) -> (f64, f64) {
        let eta = self.params.eta_z;
        match self.pieces[i] {
            Piece::Z1 { scale, origin } => {
                let (v, d) = z1_both(t - origin, eta);
                (scale * v, scale * d)
            }
            Piece::PPlus { scale, origin } => (
                1.5 * scale * p_plus_raw(t - origin, eta, self.nu),
                1.5 * scale * p_plus_d_raw(t - origin, eta, self.nu),
            ),
            Piece::Bridge { a, b, lo, hi } => {
                let w = b - a;
                let s = ((t - a) / w).clamp(0.0, 1.0);
                let h = 3.0 * s * s - 2.0 * s * s * s;
                let dh = (6.0 * s - 6.0 * s * s) / w;
                (lo + (hi - lo) * h, (hi - lo) * dh)
            }
            Piece::PMinus { scale, origin } => (
                scale * p_minus_raw(t - origin, eta),
                scale * p_minus_d_raw(t - origin, eta),
            ),
        }
    }

    fn piece_integral(&self, i: usize, a: f64, b: f64) -> f64 {
        if b <= a {
            return 0.0;
        }
        // z1 pieces have closed-form antiderivatives on both branches
        if let Piece::Z1 { scale, origin } = self.pieces[i] {
            let eta = self.params.eta_z;
            let j = 1.5 / eta - 1.0;
            let (a, b) = (a - origin, b - origin);
            let mut s = 0.0;
            if a < j {
                let e = b.min(j);
                s += ((-eta * a).exp() - (-eta * e).exp()) / eta;
            }
            if b > j {
                let e = a.max(j);
                s += 2.0 * z1_constant(eta) * ((1.0 + e).powf(-0.5) - (1.0 + b).powf(-0.5));
            }
            return scale * s;
        }
        simpson(|t| self.piece_eval(i, t).0, a, b, 512)
    }

    /// `z(t)` for `t >= 0`.
    pub fn value(&self, t: f64) -> f64 {
        self.piece_eval(self.piece_index(t), t).0
    }

    /// `z'(t)`; right derivative at junctions.
    pub fn deriv(&self, t: f64) -> f64 {
        self.piece_eval(self.piece_index(t), t).1
    }

    /// Value and derivative jumps at `t` (right piece minus left piece).
    pub fn jump_at(&self, t: f64) -> (f64, f64) {
        let i = self.piece_index(t);
        let t_star = 1.5 / self.params.eta_z - 1.0;
        if self.starts[i] == t && i > 0 {
            let (l, dl) = self.piece_eval(i - 1, t);
            let (r, dr) = self.piece_eval(i, t);
            return (r - l, dr - dl);
        }
        // internal z1 switch: compare both branch formulas
        if let Piece::Z1 { scale, origin } = self.pieces[i] {
            let tau = t - origin;
            if (tau - t_star).abs() < 1e-12 {
                let eta = self.params.eta_z;
                let e = (-eta * tau).exp();
                let p = z1_constant(eta) * (1.0 + tau).powf(-1.5);
                return (scale * (p - e), scale * (-1.5 * p / (1.0 + tau) + eta * e));
            }
        }
        (0.0, 0.0)
    }

    /// `int_0^t z` (exact up to quadrature within pieces).
    pub fn integral(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let i = self.piece_index(t);
        self.cumulative[i] + self.piece_integral(i, self.starts[i], t)
    }
}

/// `eta^{-3/2} (3/2)^{3/2} e^{eta - 3/2}`.
pub fn z1_constant(eta: f64) -> f64 {
    eta.powf(-1.5) * 1.5f64.powf(1.5) * (eta - 1.5).exp()
}

/// The two-branch profile `z1`: `e^{-eta t}` up to `3/(2 eta) - 1`, then `C (1+t)^{-3/2}`.
pub fn z1(t: f64, eta: f64) -> f64 {
    z1_both(t, eta).0
}

fn z1_both(t: f64, eta: f64) -> (f64, f64) {
    if t <= 1.5 / eta - 1.0 {
        let e = (-eta * t).exp();
        (e, -eta * e)
    } else {
        let p = z1_constant(eta) * (1.0 + t).powf(-1.5);
        (p, -1.5 * p / (1.0 + t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoint_identities() {
        for &eta in &[0.1, 0.3, 0.6] {
            let nu = 0.5 * eta;
            let l = 1.0 / eta;
            assert_eq!(p_minus(-l, eta).unwrap(), 1.0);
            assert!(p_minus_deriv(-l, eta).unwrap().abs() < 1e-15);
            assert!((p_minus(0.0, eta).unwrap() - 2.0 / 3.0).abs() < 1e-15);
            assert!((p_minus_deriv(0.0, eta).unwrap() + 2.0 / 3.0 * eta).abs() < 1e-15);
            assert!((p_plus(0.0, eta, nu).unwrap() - 2.0 / 3.0).abs() < 1e-15);
            assert!((p_plus_deriv(0.0, eta, nu).unwrap() + 2.0 / 3.0 * nu).abs() < 1e-15);
            assert!(p_plus_deriv(l, eta, nu).unwrap().abs() < 1e-15);
            assert!(p_plus(l, eta, nu).unwrap() >= 1.0 / 3.0);
        }
        assert!(p_minus(0.5, 0.3).is_err());
        assert!(p_plus(-0.5, 0.3, 0.1).is_err());
    }

    #[test]
    fn simple_case_is_scaled_z1() {
        let z = ZFunction::new(ZParams::new(0.1, 0.1, 20.0).unwrap());
        assert!(!z.is_five_piece());
        assert_eq!(z.value(0.0), 0.1);
        assert!((z.value(3.0) - 0.1 * (-0.3f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn integral_matches_bound_from_below() {
        let z = ZFunction::new(ZParams::new(0.3, 0.1, 20.0).unwrap());
        assert!(z.integral(2000.0) < z.integral_bound());
        assert!(z.integral(10.0) > 0.0);
    }
}
