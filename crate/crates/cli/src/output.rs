//! Output directory handling and the run manifest.

use std::path::{Path, PathBuf};
use std::time::Instant;

use nlfront_core::FieldDump;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::failure::Failure;

#[derive(Debug, Serialize)]
struct Stage {
    name: String,
    seconds: f64,
}

#[derive(Debug, Serialize)]
struct Manifest<'a> {
    command: &'a str,
    status: &'a str,
    exit_code: u8,
    config_sha256: &'a str,
    nlfront_version: &'a str,
    threads: usize,
    seed: u64,
    outputs: &'a [String],
    stages: &'a [Stage],
}

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// Collects outputs under one directory; in dry-run mode nothing touches the disk.
pub struct Output {
    dir: PathBuf,
    dry_run: bool,
    written: Vec<String>,
    stages: Vec<Stage>,
}

impl Output {
    pub fn new(dir: &Path, dry_run: bool) -> Self {
        Output {
            dir: dir.to_path_buf(),
            dry_run,
            written: Vec::new(),
            stages: Vec::new(),
        }
    }

    fn ensure_dir(&self) -> Result<(), Failure> {
        std::fs::create_dir_all(&self.dir)
            .map_err(|e| Failure::Runtime(format!("{}: {e}", self.dir.display())))
    }

    pub fn text(&mut self, name: &str, content: &str) -> Result<(), Failure> {
        if self.dry_run {
            return Ok(());
        }
        self.ensure_dir()?;
        let path = self.dir.join(name);
        std::fs::write(&path, content).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?;
        self.written.push(name.to_string());
        Ok(())
    }

    pub fn dump(&mut self, name: &str, dump: &FieldDump) -> Result<(), Failure> {
        if self.dry_run {
            return Ok(());
        }
        self.ensure_dir()?;
        dump.write(&self.dir.join(name))?;
        self.written.push(name.to_string());
        Ok(())
    }

    /// Runs `f` and records its wall-clock time under `name`.
    pub fn stage<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.stages.push(Stage {
            name: name.to_string(),
            seconds: start.elapsed().as_secs_f64(),
        });
        out
    }

    #[allow(clippy::too_many_arguments)]
    pub fn manifest(
        &mut self,
        command: &str,
        exit_code: u8,
        canonical_config: &str,
        threads: usize,
        seed: u64,
    ) -> Result<(), Failure> {
        if self.dry_run {
            return Ok(());
        }
        let hash = sha256_hex(canonical_config);
        let m = Manifest {
            command,
            status: if exit_code == 0 { "ok" } else { "failed" },
            exit_code,
            config_sha256: &hash,
            nlfront_version: env!("CARGO_PKG_VERSION"),
            threads,
            seed,
            outputs: &self.written,
            stages: &self.stages,
        };
        let text = toml::to_string(&m).map_err(|e| Failure::Runtime(e.to_string()))?;
        self.ensure_dir()?;
        std::fs::write(self.dir.join("manifest.toml"), text)
            .map_err(|e| Failure::Runtime(format!("manifest: {e}")))?;
        std::fs::write(self.dir.join("config.toml"), canonical_config)
            .map_err(|e| Failure::Runtime(format!("config copy: {e}")))?;
        Ok(())
    }
}
