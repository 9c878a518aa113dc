// `!(x > 0.0)` is kept on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

mod commands;
mod config;
mod failure;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::RunConfig;
use crate::failure::Failure;
use crate::output::Output;

/// Nonlocal bistable fronts around convex obstacles.
#[derive(Parser)]
#[command(name = "nlfront", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// TOML run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Validate the configuration and print the plan without writing anything.
    #[arg(long)]
    dry_run: bool,
    /// Output directory (overrides `output.directory`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (overrides `threads`; 0 keeps the default).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for the traveling wave profile and speed.
    Wave(Common),
    /// Evolve a planar front through the configured domain.
    Simulate(Common),
    /// Scan the sign of the evolution operator on the configured certificates.
    Certify(Common),
    /// Run an experiment: entire, recover, farfield or liouville.
    Experiment {
        /// Overrides `experiment.kind`.
        kind: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Tabulate the damping function z and check its properties.
    Zfn {
        #[arg(long)]
        eta: f64,
        #[arg(long)]
        eps1: f64,
        #[arg(long)]
        t1: f64,
        /// End of the sampled interval (default t1 + 100).
        #[arg(long)]
        horizon: Option<f64>,
        #[arg(long, default_value_t = 2001)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Quick internal consistency checks.
    Selfcheck(Common),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Wave(_) => "wave",
            Command::Simulate(_) => "simulate",
            Command::Certify(_) => "certify",
            Command::Experiment { .. } => "experiment",
            Command::Zfn { .. } => "zfn",
            Command::Selfcheck(_) => "selfcheck",
        }
    }

    fn common(&self) -> &Common {
        match self {
            Command::Wave(c) | Command::Simulate(c) | Command::Certify(c) | Command::Selfcheck(c) => c,
            Command::Experiment { common, .. } | Command::Zfn { common, .. } => common,
        }
    }

    fn needs_config(&self) -> bool {
        !matches!(self, Command::Zfn { .. } | Command::Selfcheck(_))
    }
}

fn load(cmd: &Command) -> Result<Option<RunConfig>, Failure> {
    let common = cmd.common();
    let mut cfg = match &common.config {
        Some(path) => RunConfig::load(path)?,
        None if cmd.needs_config() => {
            return Err(Failure::Config {
                key: "config".into(),
                msg: format!("`{}` needs --config", cmd.name()),
            })
        }
        None => return Ok(None),
    };
    if let Command::Experiment { kind: Some(k), .. } = cmd {
        cfg.experiment.kind = k.clone();
        cfg.validate()?;
    }
    if let Some(t) = common.threads {
        cfg.threads = t;
    }
    if let Some(dir) = &common.out {
        cfg.output.directory = dir.to_string_lossy().into_owned();
    }
    Ok(Some(cfg))
}

fn init_threads(threads: usize) -> Result<(), Failure> {
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Failure::Runtime(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn run(cmd: &Command) -> Result<(), Failure> {
    let cfg = load(cmd)?;
    let common = cmd.common();
    let dry = common.dry_run;
    let threads = cfg.as_ref().map_or(common.threads.unwrap_or(0), |c| c.threads);
    init_threads(threads)?;
    // without a configuration, outputs are written only when --out is given
    let dir = match (&cfg, &common.out) {
        (Some(c), _) => Some(PathBuf::from(&c.output.directory)),
        (None, Some(d)) => Some(d.clone()),
        (None, None) => None,
    };
    let mut out = Output::new(dir.as_deref().unwrap_or(std::path::Path::new(".")), dry || dir.is_none());
    let result = match cmd {
        Command::Wave(_) => commands::wave(cfg.as_ref().expect("loaded"), &mut out, dry),
        Command::Simulate(_) => commands::simulate(cfg.as_ref().expect("loaded"), &mut out, dry),
        Command::Certify(_) => commands::certify(cfg.as_ref().expect("loaded"), &mut out, dry),
        Command::Experiment { .. } => commands::experiment(cfg.as_ref().expect("loaded"), &mut out, dry),
        Command::Zfn {
            eta,
            eps1,
            t1,
            horizon,
            samples,
            ..
        } => {
            if dry {
                println!("plan: tabulate z for eta = {eta}, eps1 = {eps1}, t1 = {t1} at {samples} samples");
                Ok(())
            } else {
                commands::zfn(*eta, *eps1, *t1, *horizon, *samples).and_then(|s| {
                    if dir.is_some() {
                        out.text("zfn.csv", &s.csv)?;
                        for l in &s.lines {
                            println!("{l}");
                        }
                    } else {
                        print!("{}", s.csv);
                        for l in &s.lines {
                            eprintln!("# {l}");
                        }
                    }
                    if s.pass {
                        Ok(())
                    } else {
                        Err(Failure::Assertion("z-function properties failed".into()))
                    }
                })
            }
        }
        Command::Selfcheck(_) => {
            let seed = cfg.as_ref().map_or(1, |c| c.seed);
            if dry {
                println!("plan: convolution, profile, z-function, comparison and shift checks with seed {seed}");
                Ok(())
            } else {
                commands::selfcheck(seed, &mut out)
            }
        }
    };
    let code = result.as_ref().map_or_else(|e| e.exit_code(), |_| 0);
    if let Some(c) = &cfg {
        out.manifest(cmd.name(), code, &c.canonical(), c.threads, c.seed)?;
    } else if dir.is_some() {
        out.manifest(cmd.name(), code, "", threads, 1)?;
    }
    result
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
