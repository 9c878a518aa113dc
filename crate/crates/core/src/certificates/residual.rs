//! Grid evaluation of `Lw = w_t - int_Omega J(x-y)[w(y) - w(x)] dy - f(w)`.

use rayon::prelude::*;

use super::large_time::LargeTime;
use super::planar::PlanarPair;
use super::shift::TwoFront;
use crate::domain::ExteriorGrid;
use crate::error::{invalid, Error, Result};
use crate::nonlinearity::Bistable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    WMinus,
    WPlus,
    UMinus,
    UPlus,
    PlanarLower,
    PlanarUpper,
}

impl Which {
    pub fn name(self) -> &'static str {
        match self {
            Which::WMinus => "wminus",
            Which::WPlus => "wplus",
            Which::UMinus => "uminus",
            Which::UPlus => "uplus",
            Which::PlanarLower => "planar_lower",
            Which::PlanarUpper => "planar_upper",
        }
    }

    /// Sub-solutions need `Lw <= 0`, super-solutions `Lw >= 0`.
    pub fn is_sub(self) -> bool {
        matches!(self, Which::WMinus | Which::UMinus | Which::PlanarLower)
    }
}

impl std::str::FromStr for Which {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "wminus" => Which::WMinus,
            "wplus" => Which::WPlus,
            "uminus" => Which::UMinus,
            "uplus" => Which::UPlus,
            "planar_lower" => Which::PlanarLower,
            "planar_upper" => Which::PlanarUpper,
            _ => return Err(invalid("certify.which", format!("unknown certificate `{s}`"))),
        })
    }
}

/// Value and time derivative of a certificate frozen at one time.
pub struct Frame<'a> {
    pub value: Box<dyn Fn([f64; 2]) -> f64 + Sync + 'a>,
    pub rate: Box<dyn Fn([f64; 2]) -> f64 + Sync + 'a>,
}

/// A candidate sub- or super-solution.
pub trait Certificate: Sync {
    fn which(&self) -> Which;
    /// Fails outside the certificate's validity window.
    fn frame(&self, t: f64) -> Result<Frame<'_>>;
}

/// `W-` or `W+` selected by `which`.
pub struct TwoFrontCert<'a> {
    pub w: &'a TwoFront,
    pub which: Which,
}

impl Certificate for TwoFrontCert<'_> {
    fn which(&self) -> Which {
        self.which
    }

    fn frame(&self, t: f64) -> Result<Frame<'_>> {
        let xi = self.w.params.xi(t)?;
        let xd = self.w.params.xi_dot(t)?;
        let w = self.w;
        Ok(match self.which {
            Which::WMinus => Frame {
                value: Box::new(move |x| w.w_minus_with(x[0], t, xi)),
                rate: Box::new(move |x| w.w_minus_t(x[0], t, xi, xd)),
            },
            Which::WPlus => Frame {
                value: Box::new(move |x| w.w_plus_with(x[0], t, xi)),
                rate: Box::new(move |x| w.w_plus_t(x[0], t, xi, xd)),
            },
            other => return Err(invalid("certify.which", format!("{} is not a two-front certificate", other.name()))),
        })
    }
}

pub struct LargeTimeCert<'a> {
    pub u: &'a LargeTime,
    pub which: Which,
}

impl Certificate for LargeTimeCert<'_> {
    fn which(&self) -> Which {
        self.which
    }

    fn frame(&self, t: f64) -> Result<Frame<'_>> {
        if t < 1.0 {
            return Err(Error::Domain(format!("t = {t} precedes 1")));
        }
        let u = self.u;
        let bz = u.big_z(t);
        let zt = u.z.value(t);
        Ok(match self.which {
            Which::UMinus => Frame {
                value: Box::new(move |x| u.profile.eval(u.xi_minus_with(x, t, bz)) - zt),
                rate: Box::new(move |x| u.u_minus_t(x, t, bz)),
            },
            Which::UPlus => Frame {
                value: Box::new(move |x| u.profile.eval(u.psi_plus_with(x, t, bz)) + zt),
                rate: Box::new(move |x| u.u_plus_t(x, t, bz)),
            },
            other => return Err(invalid("certify.which", format!("{} is not a large-time certificate", other.name()))),
        })
    }
}

pub struct PlanarCert<'a> {
    pub pair: &'a PlanarPair,
    pub which: Which,
}

impl Certificate for PlanarCert<'_> {
    fn which(&self) -> Which {
        self.which
    }

    fn frame(&self, t: f64) -> Result<Frame<'_>> {
        let p = self.pair;
        let sign = match self.which {
            Which::PlanarLower => -1.0,
            Which::PlanarUpper => 1.0,
            other => return Err(invalid("certify.which", format!("{} is not a planar certificate", other.name()))),
        };
        p.lower(0.0, t)?;
        Ok(Frame {
            value: Box::new(move |x| {
                let v = p.profile.eval(p.argument(x[0], t, sign));
                v + sign * p.params.eps * (-p.params.omega * (t - p.params.t0)).exp()
            }),
            rate: Box::new(move |x| p.time_derivative(x[0], t, sign)),
        })
    }
}

/// Sign statistics of `Lw` at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeSample {
    pub t: f64,
    pub sup: f64,
    pub inf: f64,
    pub sup_at: [f64; 2],
    pub inf_at: [f64; 2],
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub which: Which,
    pub samples: Vec<TimeSample>,
    pub tolerance: f64,
    /// `sup Lw` for sub-solutions, `inf Lw` for super-solutions.
    pub extreme: f64,
    pub worst_x: [f64; 2],
    pub worst_t: f64,
    pub pass: bool,
    /// End of the initial run of passing samples.
    pub t1: Option<f64>,
}

impl ResidualReport {
    fn sample_passes(&self, s: &TimeSample) -> bool {
        if self.which.is_sub() {
            s.sup <= self.tolerance
        } else {
            s.inf >= -self.tolerance
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,sup,inf,sup_x1,sup_x2,inf_x1,inf_x2\n");
        for s in &self.samples {
            out.push_str(&format!(
                "{:?},{:?},{:?},{:?},{:?},{:?},{:?}\n",
                s.t, s.sup, s.inf, s.sup_at[0], s.sup_at[1], s.inf_at[0], s.inf_at[1]
            ));
        }
        out
    }

    pub fn summary(&self) -> String {
        format!(
            "which={} pass={} extreme={:e} tolerance={:e} worst_x1={} worst_x2={} worst_t={} t1={}",
            self.which.name(),
            self.pass,
            self.extreme,
            self.tolerance,
            self.worst_x[0],
            self.worst_x[1],
            self.worst_t,
            self.t1.map_or("none".to_string(), |t| t.to_string())
        )
    }
}

/// `Lw` at every cell of `grid` (NaN on obstacle cells).
pub fn residual_field(grid: &ExteriorGrid, f: &Bistable, frame: &Frame<'_>) -> Vec<f64> {
    let ext = grid.sample_padded(&frame.value);
    let conv = grid.convolve_padded(&ext);
    let d = grid.degree();
    (0..grid.len())
        .into_par_iter()
        .map(|k| {
            if !grid.is_exterior(k) {
                return f64::NAN;
            }
            let x = grid.center(k);
            let w = (frame.value)(x);
            (frame.rate)(x) - (conv[k] - d[k] * w) - f.eval_extended(w)
        })
        .collect()
}

/// Scans `Lw` over `times`; the time derivative is analytic unless `fd_step` is set,
/// in which case it is a central difference with that step.
pub fn certificate_residual(
    cert: &dyn Certificate,
    grid: &ExteriorGrid,
    f: &Bistable,
    times: &[f64],
    tolerance: f64,
    fd_step: Option<f64>,
) -> Result<ResidualReport> {
    if grid.ghost_width() < 8 {
        return Err(Error::Precondition(
            "kernel support spans fewer than 16 cells".into(),
        ));
    }
    if times.is_empty() {
        return Err(invalid("certify.samples", "no sample times"));
    }
    let mut samples = Vec::with_capacity(times.len());
    for &t in times {
        let frame = cert.frame(t)?;
        let field = match fd_step {
            None => residual_field(grid, f, &frame),
            Some(dt) => {
                let fp = cert.frame(t + dt)?;
                let fm = cert.frame(t - dt)?;
                let central = Frame {
                    value: Box::new(|x| (frame.value)(x)),
                    rate: Box::new(move |x| ((fp.value)(x) - (fm.value)(x)) / (2.0 * dt)),
                };
                residual_field(grid, f, &central)
            }
        };
        let mut s = TimeSample {
            t,
            sup: f64::NEG_INFINITY,
            inf: f64::INFINITY,
            sup_at: [0.0; 2],
            inf_at: [0.0; 2],
        };
        for (k, v) in field.iter().enumerate() {
            if v.is_nan() {
                continue;
            }
            if *v > s.sup {
                s.sup = *v;
                s.sup_at = grid.center(k);
            }
            if *v < s.inf {
                s.inf = *v;
                s.inf_at = grid.center(k);
            }
        }
        samples.push(s);
    }
    let which = cert.which();
    let mut report = ResidualReport {
        which,
        samples,
        tolerance,
        extreme: 0.0,
        worst_x: [0.0; 2],
        worst_t: times[0],
        pass: true,
        t1: None,
    };
    let (mut extreme, mut wx, mut wt) = (
        if which.is_sub() { f64::NEG_INFINITY } else { f64::INFINITY },
        [0.0; 2],
        times[0],
    );
    for s in &report.samples {
        if which.is_sub() && s.sup > extreme {
            extreme = s.sup;
            wx = s.sup_at;
            wt = s.t;
        }
        if !which.is_sub() && s.inf < extreme {
            extreme = s.inf;
            wx = s.inf_at;
            wt = s.t;
        }
    }
    report.extreme = extreme;
    report.worst_x = wx;
    report.worst_t = wt;
    report.pass = report.samples.iter().all(|s| report.sample_passes(s));
    report.t1 = report
        .samples
        .iter()
        .take_while(|s| report.sample_passes(s))
        .last()
        .map(|s| s.t);
    Ok(report)
}

/// `n + 1` equally spaced times on `[a, b]`.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    let n = n.max(1);
    (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect()
}
