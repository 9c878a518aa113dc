//! TOML run configuration. Every section is optional; unknown keys are rejected.

use std::path::Path;

use nlfront_core::certificates::{LargeTimeParams, TiltForm, Which};
use nlfront_core::{Bistable, ExteriorGrid, GridBox, Kernel, Kernel1D, ObstacleSpec, Scheme};
use serde::{Deserialize, Serialize};

use crate::failure::Failure;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// Seed for randomized checks.
    pub seed: u64,
    /// Worker threads; 0 keeps the rayon default.
    pub threads: usize,
    pub kernel: KernelCfg,
    pub nonlinearity: NonlinearityCfg,
    pub domain: DomainCfg,
    pub obstacle: ObstacleCfg,
    pub wave: WaveCfg,
    pub evolve: EvolveCfg,
    pub certify: CertifyCfg,
    pub experiment: ExperimentCfg,
    pub output: OutputCfg,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 1,
            threads: 0,
            kernel: KernelCfg::default(),
            nonlinearity: NonlinearityCfg::default(),
            domain: DomainCfg::default(),
            obstacle: ObstacleCfg::default(),
            wave: WaveCfg::default(),
            evolve: EvolveCfg::default(),
            certify: CertifyCfg::default(),
            experiment: ExperimentCfg::default(),
            output: OutputCfg::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct KernelCfg {
    pub dim: usize,
    pub radius: f64,
    pub exponent: u32,
}

impl Default for KernelCfg {
    fn default() -> Self {
        KernelCfg {
            dim: 2,
            radius: 1.0,
            exponent: 2,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NonlinearityCfg {
    /// `cubic` or `multistable`.
    pub family: String,
    pub a: f64,
    /// `a1 < a2 < a3` for the multistable family.
    pub roots: Vec<f64>,
    pub kappa: f64,
}

impl Default for NonlinearityCfg {
    fn default() -> Self {
        NonlinearityCfg {
            family: "cubic".into(),
            a: 0.25,
            roots: Vec::new(),
            kappa: 1.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DomainCfg {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub h: f64,
    /// Require the obstacle to lie in `x1 <= 0`.
    pub require_left: bool,
}

impl Default for DomainCfg {
    fn default() -> Self {
        DomainCfg {
            lower: vec![-16.0, -10.0],
            upper: vec![12.0, 10.0],
            h: 0.1,
            require_left: false,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ObstacleCfg {
    /// `empty`, `disc`, `ellipse` or `polygon`.
    pub kind: String,
    pub center: [f64; 2],
    pub radius: f64,
    pub semi_axes: [f64; 2],
    pub vertices: Vec<[f64; 2]>,
}

impl Default for ObstacleCfg {
    fn default() -> Self {
        ObstacleCfg {
            kind: "disc".into(),
            center: [0.0, 0.0],
            radius: 2.0,
            semi_axes: [1.0, 1.0],
            vertices: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WaveCfg {
    pub z_max: f64,
    pub h: f64,
    /// Largest accepted sup residual.
    pub tolerance: f64,
}

impl Default for WaveCfg {
    fn default() -> Self {
        WaveCfg {
            z_max: 40.0,
            h: 0.05,
            tolerance: 1e-8,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EvolveCfg {
    pub dt: f64,
    pub scheme: String,
    pub t0: f64,
    pub t1: f64,
    /// Steps between snapshots.
    pub stride: usize,
    /// Initial `theta0`-level position of the planar front.
    pub front_start: f64,
}

impl Default for EvolveCfg {
    fn default() -> Self {
        EvolveCfg {
            dt: 0.05,
            scheme: "heun".into(),
            t0: 0.0,
            t1: 10.0,
            stride: 20,
            front_start: 5.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CertifyCfg {
    pub which: Vec<String>,
    pub tolerance: f64,
    /// Scan window; each certificate family has its own default.
    pub t_start: Option<f64>,
    pub t_end: Option<f64>,
    pub samples: usize,
    /// `linear` or `geometric`.
    pub spacing: String,
    /// Central-difference step replacing the analytic time derivative.
    pub fd_step: Option<f64>,
    pub beta: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub beta_plus: f64,
    pub alpha_plus: f64,
    pub eps: f64,
    pub tilt: String,
    pub eta_z: f64,
    pub eps1: f64,
    pub z_t1: f64,
    /// Tilt-constant sample times (geometric on the scan window).
    pub tilt_samples: usize,
    pub planar_eps: Option<f64>,
    pub planar_t0: f64,
}

impl Default for CertifyCfg {
    fn default() -> Self {
        CertifyCfg {
            which: vec!["wminus".into(), "wplus".into()],
            tolerance: 1e-3,
            t_start: None,
            t_end: None,
            samples: 40,
            spacing: "linear".into(),
            fd_step: None,
            beta: 1.0,
            alpha: 0.75,
            gamma: 2.0,
            beta_plus: 1.0,
            alpha_plus: 0.75,
            eps: 0.05,
            tilt: "gaussian".into(),
            eta_z: 0.007,
            eps1: 0.05,
            z_t1: 0.0,
            tilt_samples: 11,
            planar_eps: None,
            planar_t0: 0.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentCfg {
    /// `entire`, `recover`, `farfield` or `liouville`.
    pub kind: String,
    pub n_list: Vec<f64>,
    pub eval_times: Vec<f64>,
    pub phi_low: f64,
    pub lipschitz_window: f64,
    pub t_end: f64,
    pub sample_every: f64,
    pub eps: f64,
    pub keps_radius: f64,
    pub offaxis: f64,
    pub offsets: Vec<f64>,
    pub half_width: f64,
    pub dip: f64,
    pub dip_width: f64,
    /// `recover`: `D` must exceed this during passage.
    pub peak_threshold: f64,
    /// `recover`: `D(t_end)` must fall below this.
    pub decay_threshold: f64,
}

impl Default for ExperimentCfg {
    fn default() -> Self {
        ExperimentCfg {
            kind: "recover".into(),
            n_list: vec![10.0, 20.0, 40.0],
            eval_times: vec![-5.0, 0.0, 5.0],
            phi_low: 0.1,
            lipschitz_window: 10.0,
            t_end: 80.0,
            sample_every: 1.0,
            eps: 0.05,
            keps_radius: 6.0,
            offaxis: 6.0,
            offsets: vec![5.0, 10.0, 20.0],
            half_width: 1.0,
            dip: 0.5,
            dip_width: 1.0,
            peak_threshold: 0.1,
            decay_threshold: 0.05,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputCfg {
    pub directory: String,
    /// Any of `csv` and `bin`.
    pub formats: Vec<String>,
}

impl Default for OutputCfg {
    fn default() -> Self {
        OutputCfg {
            directory: "out".into(),
            formats: vec!["csv".into(), "bin".into()],
        }
    }
}

impl OutputCfg {
    pub fn csv(&self) -> bool {
        self.formats.iter().any(|f| f == "csv")
    }

    pub fn bin(&self) -> bool {
        self.formats.iter().any(|f| f == "bin")
    }
}

fn cfg_err(key: &str, msg: impl std::fmt::Display) -> Failure {
    Failure::Config {
        key: key.to_string(),
        msg: msg.to_string(),
    }
}

/// Maps a core error raised while building `key` to a configuration failure, keeping
/// the core's parameter name when it has one.
pub fn core_cfg(key: &str) -> impl Fn(nlfront_core::Error) -> Failure + '_ {
    move |e| match e {
        nlfront_core::Error::InvalidParameter { name, reason } => cfg_err(name, reason),
        other => cfg_err(key, other),
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path).map_err(|e| cfg_err("config", format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, Failure> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| {
            let msg = e.message().to_string();
            let key = unknown_key(&msg).unwrap_or_else(|| "config".to_string());
            cfg_err(&key, msg)
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Canonical TOML form; the manifest hash is taken over this text.
    pub fn canonical(&self) -> String {
        toml::to_string(self).expect("configuration serializes")
    }

    /// Parse-time checks of every constraint that does not need a solve.
    pub fn validate(&self) -> Result<(), Failure> {
        self.kernel()?;
        self.nonlinearity()?;
        self.scheme()?;
        self.grid_box()?;
        self.obstacle()?;
        if !(self.wave.tolerance > 0.0) {
            return Err(cfg_err("wave.tolerance", "must be positive"));
        }
        if !(self.evolve.dt > 0.0) {
            return Err(cfg_err("evolve.dt", "must be positive"));
        }
        if !(self.evolve.t1 >= self.evolve.t0) {
            return Err(cfg_err("evolve.t1", "must not precede evolve.t0"));
        }
        for w in &self.certify.which {
            w.parse::<Which>().map_err(core_cfg("certify.which"))?;
        }
        if self.certify.samples == 0 {
            return Err(cfg_err("certify.samples", "must be positive"));
        }
        if !matches!(self.certify.spacing.as_str(), "linear" | "geometric") {
            return Err(cfg_err("certify.spacing", format!("unknown spacing `{}`", self.certify.spacing)));
        }
        self.large_time_params(1.0)?;
        if !matches!(self.experiment.kind.as_str(), "entire" | "recover" | "farfield" | "liouville") {
            return Err(cfg_err("experiment.kind", format!("unknown experiment `{}`", self.experiment.kind)));
        }
        if !(self.experiment.sample_every > 0.0) {
            return Err(cfg_err("experiment.sample_every", "must be positive"));
        }
        for f in &self.output.formats {
            if f != "csv" && f != "bin" {
                return Err(cfg_err("output.formats", format!("unknown format `{f}`")));
            }
        }
        if self.output.directory.is_empty() {
            return Err(cfg_err("output.directory", "must not be empty"));
        }
        Ok(())
    }

    pub fn kernel(&self) -> Result<Kernel, Failure> {
        let k = &self.kernel;
        Kernel::new(k.dim, k.radius, k.exponent).map_err(core_cfg("kernel"))
    }

    /// The one-dimensional kernel of the profile equation.
    pub fn profile_kernel(&self) -> Result<Kernel1D, Failure> {
        let k = self.kernel()?;
        if k.dim() == 1 { k.as_1d() } else { k.marginal_1d() }.map_err(core_cfg("kernel"))
    }

    pub fn nonlinearity(&self) -> Result<Bistable, Failure> {
        let n = &self.nonlinearity;
        match n.family.as_str() {
            "cubic" => Bistable::cubic(n.a, n.kappa),
            "multistable" => {
                if n.roots.len() != 3 {
                    return Err(cfg_err("nonlinearity.roots", "multistable needs three roots"));
                }
                Bistable::multistable(n.roots[0], n.roots[1], n.roots[2], n.kappa)
            }
            other => return Err(cfg_err("nonlinearity.family", format!("unknown family `{other}`"))),
        }
        .map_err(core_cfg("nonlinearity"))
    }

    pub fn scheme(&self) -> Result<Scheme, Failure> {
        self.evolve.scheme.parse().map_err(core_cfg("evolve.scheme"))
    }

    pub fn grid_box(&self) -> Result<GridBox, Failure> {
        let d = &self.domain;
        let dim = self.kernel.dim;
        if d.lower.len() != dim || d.upper.len() != dim {
            return Err(cfg_err("domain.lower", format!("box corners need {dim} coordinates")));
        }
        if d.lower.iter().zip(&d.upper).any(|(a, b)| !(a < b)) {
            return Err(cfg_err("domain.upper", "upper corner must exceed the lower one"));
        }
        Ok(if dim == 1 {
            GridBox::new_1d(d.lower[0], d.upper[0])
        } else {
            GridBox::new_2d([d.lower[0], d.lower[1]], [d.upper[0], d.upper[1]])
        })
    }

    pub fn obstacle(&self) -> Result<ObstacleSpec, Failure> {
        let o = &self.obstacle;
        let spec = match o.kind.as_str() {
            "empty" => ObstacleSpec::Empty,
            "disc" => ObstacleSpec::Disc {
                center: o.center,
                radius: o.radius,
            },
            "ellipse" => ObstacleSpec::Ellipse {
                center: o.center,
                semi_axes: o.semi_axes,
            },
            "polygon" => ObstacleSpec::Polygon {
                vertices: o.vertices.clone(),
            },
            other => return Err(cfg_err("obstacle.kind", format!("unknown obstacle `{other}`"))),
        };
        spec.validate(self.domain.require_left).map_err(core_cfg("obstacle"))?;
        Ok(spec)
    }

    pub fn grid_with(&self, obstacle: ObstacleSpec, lower: Option<[f64; 2]>, upper: Option<[f64; 2]>) -> Result<ExteriorGrid, Failure> {
        let mut b = self.grid_box()?;
        if let Some(l) = lower {
            b.lower = l;
        }
        if let Some(u) = upper {
            b.upper = u;
        }
        ExteriorGrid::build(b, self.domain.h, obstacle, self.domain.require_left, &self.kernel()?)
            .map_err(core_cfg("domain"))
    }

    pub fn grid(&self) -> Result<ExteriorGrid, Failure> {
        self.grid_with(self.obstacle()?, None, None)
    }

    /// Large-time parameters with the drift gain `k_z` filled in later.
    pub fn large_time_params(&self, k_z: f64) -> Result<LargeTimeParams, Failure> {
        let c = &self.certify;
        let tilt: TiltForm = c.tilt.parse().map_err(core_cfg("certify.tilt"))?;
        let p = LargeTimeParams {
            beta: c.beta,
            alpha: c.alpha,
            gamma: c.gamma,
            beta_plus: c.beta_plus,
            alpha_plus: c.alpha_plus,
            k_z,
            t_eps: 0.0,
            eps: c.eps,
            tilt,
        };
        p.validate().map_err(core_cfg("certify"))?;
        Ok(p)
    }
}

/// Extracts the key from serde's "unknown field `x`" message.
fn unknown_key(msg: &str) -> Option<String> {
    let rest = msg.strip_prefix("unknown field `")?;
    Some(rest[..rest.find('`')?].to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        RunConfig::default().validate().unwrap();
        let back = RunConfig::parse(&RunConfig::default().canonical()).unwrap();
        assert_eq!(back.canonical(), RunConfig::default().canonical());
    }

    #[test]
    fn unknown_keys_are_named() {
        match RunConfig::parse("[wave]\nzmax = 3\n") {
            Err(Failure::Config { key, .. }) => assert_eq!(key, "zmax"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn domain_errors_carry_core_keys() {
        match RunConfig::parse("[nonlinearity]\na = 0.7\n") {
            Err(Failure::Config { key, .. }) => assert_eq!(key, "nonlinearity.a"),
            other => panic!("{other:?}"),
        }
        match RunConfig::parse("[evolve]\nscheme = \"euler\"\n") {
            Err(Failure::Config { key, .. }) => assert_eq!(key, "evolve.scheme"),
            other => panic!("{other:?}"),
        }
    }
}
