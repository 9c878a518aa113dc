//! Compactly supported radial dispersal kernels and their one-dimensional marginals.
//!
//! The family is the polynomial bump `J(x) = C (1 - |x|^2 / L^2)^p` on `|x| <= L`.

use crate::error::{invalid, Result};
use crate::quad::simpson;

/// Default number of Simpson panels across the kernel support.
pub const DEFAULT_PANELS: usize = 2048;

/// Number of intervals used to tabulate the marginal on `[-L, L]`.
pub const MARGINAL_TABLE_INTERVALS: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct Kernel {
    dim: usize,
    radius: f64,
    exponent: u32,
    norm: f64,
    panels: usize,
}

impl Kernel {
    pub fn new(dim: usize, radius: f64, exponent: u32) -> Result<Self> {
        Self::with_panels(dim, radius, exponent, DEFAULT_PANELS)
    }

    /// Builds the kernel with an explicit Simpson resolution (at least 64 panels).
    pub fn with_panels(dim: usize, radius: f64, exponent: u32, panels: usize) -> Result<Self> {
        if dim != 1 && dim != 2 {
            return Err(invalid("kernel.dimension", format!("{dim} is not 1 or 2")));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(invalid("kernel.support_radius", format!("{radius} must be positive")));
        }
        if exponent < 2 {
            return Err(invalid("kernel.exponent", format!("{exponent} < 2 breaks C1 smoothness")));
        }
        if panels < 64 {
            return Err(invalid("kernel.panels", format!("{panels} < 64")));
        }
        let mut k = Kernel {
            dim,
            radius,
            exponent,
            norm: 1.0,
            panels,
        };
        k.norm = 1.0 / k.raw_mass();
        Ok(k)
    }

    fn bump(&self, r2: f64) -> f64 {
        let s = 1.0 - r2 / (self.radius * self.radius);
        if s <= 0.0 {
            0.0
        } else {
            s.powi(self.exponent as i32)
        }
    }

    fn raw_mass(&self) -> f64 {
        let l = self.radius;
        match self.dim {
            1 => simpson(|r| self.bump(r * r), -l, l, self.panels),
            _ => simpson(
                |r| 2.0 * std::f64::consts::PI * r * self.bump(r * r),
                0.0,
                l,
                self.panels,
            ),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// Normalization constant `C`.
    pub fn norm_constant(&self) -> f64 {
        self.norm
    }

    /// Density as a function of the radius.
    pub fn eval_radial(&self, r: f64) -> f64 {
        self.norm * self.bump(r * r)
    }

    /// Density at a point; only the first `dim` coordinates are read.
    pub fn eval(&self, x: &[f64]) -> f64 {
        let r2: f64 = x.iter().take(self.dim).map(|v| v * v).sum();
        self.norm * self.bump(r2)
    }

    /// Total mass by the same Simpson rule used for normalization.
    pub fn mass(&self) -> f64 {
        self.norm * self.raw_mass()
    }

    /// The kernel viewed as a one-dimensional density (requires `dim == 1`).
    pub fn as_1d(&self) -> Result<Kernel1D> {
        if self.dim != 1 {
            return Err(invalid("kernel.dimension", "as_1d needs a one-dimensional kernel"));
        }
        Ok(Kernel1D {
            radius: self.radius,
            panels: self.panels,
            repr: Repr::Analytic(self.clone()),
        })
    }

    /// Tabulated marginal `J1(x1) = int J(x1, y') dy'` (requires `dim >= 2`).
    pub fn marginal_1d(&self) -> Result<Kernel1D> {
        if self.dim < 2 {
            return Err(invalid("kernel.dimension", "the marginal needs dimension >= 2"));
        }
        let l = self.radius;
        let n = MARGINAL_TABLE_INTERVALS;
        let step = 2.0 * l / n as f64;
        // tabulate the right half and mirror it so the table is exactly even
        let right: Vec<f64> = (0..=n / 2)
            .map(|i| {
                let x1 = i as f64 * step;
                let half = (l * l - x1 * x1).max(0.0).sqrt();
                if half == 0.0 {
                    0.0
                } else {
                    simpson(|y| self.eval(&[x1, y]), -half, half, self.panels)
                }
            })
            .collect();
        let values: Vec<f64> = right.iter().rev().chain(right.iter().skip(1)).copied().collect();
        Ok(Kernel1D {
            radius: l,
            panels: self.panels,
            repr: Repr::Table { step, values },
        })
    }

    /// Normalized lattice weights `w[i][j]` for offsets `(i - R, j - R)` on a square grid.
    pub fn stencil_2d(&self, h: f64) -> (usize, Vec<f64>) {
        let r = (self.radius / h).floor() as usize;
        let w = 2 * r + 1;
        let mut out = vec![0.0; w * w];
        for i in 0..w {
            for j in 0..w {
                let x = (i as f64 - r as f64) * h;
                let y = (j as f64 - r as f64) * h;
                out[i * w + j] = self.eval(&[x, y]);
            }
        }
        let s: f64 = out.iter().sum();
        out.iter_mut().for_each(|v| *v /= s);
        (r, out)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Analytic(Kernel),
    Table { step: f64, values: Vec<f64> },
}

/// A one-dimensional kernel, either a genuine 1-D bump or a tabulated marginal.
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel1D {
    radius: f64,
    panels: usize,
    repr: Repr,
}

impl Kernel1D {
    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn is_tabulated(&self) -> bool {
        matches!(self.repr, Repr::Table { .. })
    }

    pub fn eval(&self, x: f64) -> f64 {
        match &self.repr {
            Repr::Analytic(k) => k.eval(&[x]),
            Repr::Table { step, values } => {
                // evaluate at |x| so the interpolant is exactly even
                let s = ((values.len() - 1) / 2) as f64 + x.abs() / step;
                if !(0.0..=(values.len() - 1) as f64).contains(&s) {
                    return 0.0;
                }
                let i = (s.floor() as usize).min(values.len() - 2);
                let t = s - i as f64;
                values[i] * (1.0 - t) + values[i + 1] * t
            }
        }
    }

    /// Integral of the density.
    pub fn mass(&self) -> f64 {
        self.moment(|_| 1.0)
    }

    /// `int y^2 J1(y) dy`.
    pub fn second_moment(&self) -> f64 {
        self.moment(|y| y * y)
    }

    /// `int J1(y) e^{-lambda y} dy`.
    pub fn exp_moment(&self, lambda: f64) -> f64 {
        self.moment(|y| (-lambda * y).exp())
    }

    fn moment<G: Fn(f64) -> f64>(&self, g: G) -> f64 {
        match &self.repr {
            Repr::Analytic(_) => simpson(
                |y| self.eval(y) * g(y),
                -self.radius,
                self.radius,
                self.panels,
            ),
            Repr::Table { values, .. } => {
                // two Simpson panels per table cell integrate the linear interpolant
                // exactly when g is constant
                simpson(
                    |y| self.eval(y) * g(y),
                    -self.radius,
                    self.radius,
                    2 * (values.len() - 1),
                )
            }
        }
    }

    /// Normalized lattice weights for offsets `-R..=R`, `R = floor(L / h)`.
    pub fn weights(&self, h: f64) -> (usize, Vec<f64>) {
        let r = (self.radius / h).floor() as usize;
        let mut w: Vec<f64> = (0..=2 * r)
            .map(|k| self.eval((k as f64 - r as f64) * h))
            .collect();
        let s: f64 = w.iter().sum();
        w.iter_mut().for_each(|v| *v /= s);
        (r, w)
    }
}
