//! Bistable reaction terms `f(u) = kappa u (1 - u) prod (u - a_i)` and their derived constants.

use crate::error::{invalid, Result};
use crate::quad::simpson;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Bistable,
    Multistable,
}

/// Polynomial reaction term with stable zeros at 0 and 1.
///
/// The bistable family is the cubic `kappa u (u - a)(1 - u)`; the multistable one
/// carries three interior zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct Bistable {
    family: Family,
    kappa: f64,
    roots: Vec<f64>,
    // ascending powers
    coeffs: Vec<f64>,
}

/// Outcome of the coupling check `max f' < inf d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionF {
    pub max_fprime: f64,
    pub degree_min: f64,
    pub margin: f64,
    pub pass: bool,
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_eval(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, v| acc * x + v)
}

fn poly_deriv(c: &[f64]) -> Vec<f64> {
    if c.len() <= 1 {
        return vec![0.0];
    }
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, v)| i as f64 * v)
        .collect()
}

impl Bistable {
    /// The cubic `kappa u (u - a)(1 - u)` with `a` in `(0, 1/2)`.
    pub fn cubic(a: f64, kappa: f64) -> Result<Self> {
        if !(a > 0.0 && a < 0.5) {
            return Err(invalid("nonlinearity.a", format!("{a} is outside (0, 1/2)")));
        }
        Self::build(Family::Bistable, vec![a], kappa)
    }

    /// `kappa u (u - a1)(u - a2)(u - a3)(1 - u)` with `0 < a1 < a2 < a3 < 1` and positive mass.
    pub fn multistable(a1: f64, a2: f64, a3: f64, kappa: f64) -> Result<Self> {
        if !(0.0 < a1 && a1 < a2 && a2 < a3 && a3 < 1.0) {
            return Err(invalid(
                "nonlinearity.roots",
                format!("need 0 < a1 < a2 < a3 < 1, got {a1}, {a2}, {a3}"),
            ));
        }
        let f = Self::build(Family::Multistable, vec![a1, a2, a3], kappa)?;
        if f.mass() <= 0.0 {
            return Err(invalid("nonlinearity.roots", "int_0^1 f must be positive"));
        }
        Ok(f)
    }

    fn build(family: Family, roots: Vec<f64>, kappa: f64) -> Result<Self> {
        if !(kappa.is_finite() && kappa > 0.0) {
            return Err(invalid("nonlinearity.kappa", format!("{kappa} must be positive")));
        }
        // kappa u (1 - u)
        let mut coeffs = vec![0.0, kappa, -kappa];
        for r in &roots {
            coeffs = poly_mul(&coeffs, &[-r, 1.0]);
        }
        Ok(Bistable {
            family,
            kappa,
            roots,
            coeffs,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Interior zeros in increasing order.
    pub fn roots(&self) -> &[f64] {
        &self.roots
    }

    /// `f` on `[0, 1]` (the polynomial itself, evaluated anywhere).
    pub fn eval(&self, u: f64) -> f64 {
        poly_eval(&self.coeffs, u)
    }

    pub fn deriv(&self, u: f64) -> f64 {
        poly_eval(&poly_deriv(&self.coeffs), u)
    }

    pub fn deriv2(&self, u: f64) -> f64 {
        poly_eval(&poly_deriv(&poly_deriv(&self.coeffs)), u)
    }

    pub fn fp0(&self) -> f64 {
        self.coeffs[1]
    }

    pub fn fp1(&self) -> f64 {
        self.deriv(1.0)
    }

    /// `f` with the linear extensions `f'(0) s` below 0 and `f'(1)(s - 1)` above 1.
    pub fn eval_extended(&self, s: f64) -> f64 {
        if s <= 0.0 {
            self.fp0() * s
        } else if s >= 1.0 {
            self.fp1() * (s - 1.0)
        } else {
            self.eval(s)
        }
    }

    pub fn deriv_extended(&self, s: f64) -> f64 {
        if s <= 0.0 {
            self.fp0()
        } else if s >= 1.0 {
            self.fp1()
        } else {
            self.deriv(s)
        }
    }

    /// Largest `theta` with `f <= 0` on `[0, theta]`: the first interior zero.
    pub fn theta0(&self) -> f64 {
        self.roots[0]
    }

    /// `int_0^1 f`.
    pub fn mass(&self) -> f64 {
        match self.family {
            Family::Bistable => self.kappa * (1.0 - 2.0 * self.roots[0]) / 12.0,
            Family::Multistable => simpson(|u| self.eval(u), 0.0, 1.0, 64),
        }
    }

    /// Critical points of `f'` inside `(0, 1)` together with the end points.
    fn fprime_candidates(&self) -> Vec<f64> {
        let d2 = poly_deriv(&poly_deriv(&self.coeffs));
        let mut out = vec![0.0, 1.0];
        let n = 2000;
        let mut prev = poly_eval(&d2, 0.0);
        for i in 1..=n {
            let x = i as f64 / n as f64;
            let v = poly_eval(&d2, x);
            if prev == 0.0 {
                out.push((i - 1) as f64 / n as f64);
            } else if prev * v < 0.0 {
                let (mut lo, mut hi) = ((i - 1) as f64 / n as f64, x);
                for _ in 0..80 {
                    let mid = 0.5 * (lo + hi);
                    if poly_eval(&d2, lo) * poly_eval(&d2, mid) <= 0.0 {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                out.push(0.5 * (lo + hi));
            }
            prev = v;
        }
        out
    }

    /// `max_{[0,1]} f'`; for the cubic this is attained at `(1 + a) / 3`.
    pub fn max_fprime(&self) -> f64 {
        match self.family {
            Family::Bistable => {
                let a = self.roots[0];
                self.kappa * (1.0 - a + a * a) / 3.0
            }
            Family::Multistable => self
                .fprime_candidates()
                .into_iter()
                .map(|u| self.deriv(u))
                .fold(f64::NEG_INFINITY, f64::max),
        }
    }

    /// `min_{[0,1]} f'`.
    pub fn min_fprime(&self) -> f64 {
        self.fprime_candidates()
            .into_iter()
            .map(|u| self.deriv(u))
            .fold(f64::INFINITY, f64::min)
    }

    /// Global Lipschitz constant of the extended nonlinearity.
    pub fn lipschitz(&self) -> f64 {
        self.max_fprime().abs().max(self.min_fprime().abs())
    }

    /// Constant `L_f` with `|f(u+v) - f(u) - f(v)| <= L_f u v` on `[0,1]^2`.
    pub fn lf_constant(&self) -> f64 {
        let n = 512;
        let mut best = self.deriv2(0.0).abs();
        for i in 1..=n {
            let u = i as f64 / n as f64;
            for j in i..=n {
                let v = j as f64 / n as f64;
                let r = (self.eval_extended(u + v) - self.eval_extended(u) - self.eval_extended(v))
                    .abs()
                    / (u * v);
                best = best.max(r);
            }
        }
        1.05 * best
    }

    pub fn check_condition_f(&self, degree_min: f64) -> ConditionF {
        let max_fprime = self.max_fprime();
        let margin = degree_min - max_fprime;
        ConditionF {
            max_fprime,
            degree_min,
            margin,
            pass: margin > 0.0 && max_fprime < 1.0,
        }
    }

    /// Largest `eta` such that `f' <= -omega` on `(-inf, eta] U [1 - eta, inf)`.
    pub fn flat_zone(&self, omega: f64) -> f64 {
        let n = 20_000;
        let mut eta = 0.0;
        for i in 1..=n / 2 {
            let e = i as f64 / n as f64;
            if self.deriv(e) <= -omega && self.deriv(1.0 - e) <= -omega {
                eta = e;
            } else {
                break;
            }
        }
        eta
    }
}
