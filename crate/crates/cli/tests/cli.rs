use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn nlfront(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nlfront"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn text(b: &[u8]) -> String {
    String::from_utf8_lossy(b).into_owned()
}

const WAVE_1D: &str = r#"
[kernel]
dim = 1

[nonlinearity]
a = 0.25
kappa = 1.0

[domain]
lower = [-20.0]
upper = [20.0]
h = 0.05

[obstacle]
kind = "empty"
"#;

const SMALL_2D: &str = r#"
[nonlinearity]
a = 0.25
kappa = 1.0

[domain]
lower = [-4.0, -3.0]
upper = [4.0, 3.0]
h = 0.125

[obstacle]
kind = "disc"
center = [0.0, 0.0]
radius = 0.5

[evolve]
dt = 0.05
t1 = 2.0
stride = 10
front_start = 2.0
"#;

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn zfn_prints_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let o = nlfront(&["zfn", "--eta", "0.3", "--eps1", "0.1", "--t1", "20"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", text(&o.stderr));
    let csv = text(&o.stdout);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("t,z,dz"));
    assert_eq!(csv.lines().count(), 2002);
    let first: Vec<f64> = lines.next().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(first, vec![0.0, 0.1, -0.03]);
    let summary = text(&o.stderr);
    assert!(summary.contains("pieces=5"));
    assert!(!summary.contains("FAIL"));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn zfn_rejects_out_of_range_damping() {
    let dir = tempfile::tempdir().unwrap();
    let o = nlfront(&["zfn", "--eta", "0.9", "--eps1", "0.1", "--t1", "20"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(text(&o.stderr).contains("zfn.eta"));
}

#[test]
fn unknown_key_is_a_configuration_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.toml", "[wave]\nzmax = 3.0\n");
    let o = nlfront(&["wave", "--config", &cfg], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(text(&o.stderr).contains("`zmax`"), "{}", text(&o.stderr));
}

#[test]
fn invalid_values_name_their_key() {
    let dir = tempfile::tempdir().unwrap();
    for (body, key) in [
        ("[nonlinearity]\na = 0.7\n", "nonlinearity.a"),
        ("[evolve]\nscheme = \"euler\"\n", "evolve.scheme"),
        ("[output]\nformats = [\"png\"]\n", "output.formats"),
        ("[obstacle]\nkind = \"polygon\"\nvertices = [[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]]\n", "obstacle"),
    ] {
        let cfg = write_config(dir.path(), "c.toml", body);
        let o = nlfront(&["simulate", "--config", &cfg], dir.path());
        assert_eq!(o.status.code(), Some(2), "{body}");
        assert!(text(&o.stderr).contains(key), "{key}: {}", text(&o.stderr));
    }
    let o = nlfront(&["wave"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(text(&o.stderr).contains("--config"));
    let cfg = write_config(dir.path(), "c.toml", SMALL_2D);
    let o = nlfront(&["experiment", "bogus", "--config", &cfg], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(text(&o.stderr).contains("experiment.kind"));
}

#[test]
fn wave_writes_profile_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "w.toml", WAVE_1D);
    let o = nlfront(&["wave", "--config", &cfg, "--out", "run"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", text(&o.stderr));
    let stdout = text(&o.stdout);
    let residual: f64 = stdout
        .split_whitespace()
        .find_map(|w| w.strip_prefix("residual="))
        .unwrap()
        .parse()
        .unwrap();
    assert!(residual <= 1e-8);
    let run = dir.path().join("run");
    let profile = fs::read_to_string(run.join("profile.csv")).unwrap();
    assert!(profile.starts_with("# c="));
    assert!(profile.lines().nth(1) == Some("z,phi,dphi"));
    let manifest = fs::read_to_string(run.join("manifest.toml")).unwrap();
    assert!(manifest.contains("command = \"wave\""));
    assert!(manifest.contains("config_sha256 = \""));
    assert!(manifest.contains("name = \"profile\""));
    assert!(run.join("config.toml").exists());
}

#[test]
fn strict_tolerance_is_an_assertion_failure() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "w.toml", &format!("{WAVE_1D}\n[wave]\ntolerance = 1e-20\n"));
    let o = nlfront(&["wave", "--config", &cfg, "--out", "run"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let manifest = fs::read_to_string(dir.path().join("run/manifest.toml")).unwrap();
    assert!(manifest.contains("exit_code = 1"));
}

#[test]
fn dry_run_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.toml", SMALL_2D);
    for cmd in ["wave", "simulate", "certify", "experiment"] {
        let o = nlfront(&[cmd, "--config", &cfg, "--dry-run", "--out", "run"], dir.path());
        assert_eq!(o.status.code(), Some(0), "{cmd}: {}", text(&o.stderr));
        assert!(text(&o.stdout).starts_with("plan: "));
    }
    for args in [
        vec!["zfn", "--eta", "0.3", "--eps1", "0.1", "--t1", "20", "--dry-run", "--out", "run"],
        vec!["selfcheck", "--dry-run", "--out", "run"],
    ] {
        let o = nlfront(&args, dir.path());
        assert_eq!(o.status.code(), Some(0));
    }
    assert!(!dir.path().join("run").exists());
    assert!(!dir.path().join("out").exists());
}

#[test]
fn oversized_time_step_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.toml", &SMALL_2D.replace("dt = 0.05", "dt = 5.0"));
    let o = nlfront(&["simulate", "--config", &cfg], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(text(&o.stderr).contains("evolve.dt"));
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.toml", SMALL_2D);
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    fs::create_dir(&b).unwrap();
    for pass in 0..2 {
        let o = nlfront(&["simulate", "--config", &cfg, "--out", "a"], dir.path());
        assert_eq!(o.status.code(), Some(0), "{}", text(&o.stderr));
        if pass == 0 {
            for entry in fs::read_dir(&a).unwrap() {
                let entry = entry.unwrap();
                fs::copy(entry.path(), b.join(entry.file_name())).unwrap();
            }
        }
    }
    let mut compared = 0;
    for entry in fs::read_dir(&a).unwrap() {
        let name = entry.unwrap().file_name();
        let n = name.to_string_lossy();
        if n.ends_with(".csv") || n.ends_with(".bin") {
            assert_eq!(fs::read(a.join(&name)).unwrap(), fs::read(b.join(&name)).unwrap(), "{n}");
            compared += 1;
        }
    }
    // five dumps, the front table and the slice
    assert_eq!(compared, 7);
    let dump = fs::read(a.join("u_00000.bin")).unwrap();
    assert_eq!(&dump[..8], b"NLFLDv01");
    assert_eq!(u32::from_le_bytes(dump[8..12].try_into().unwrap()), 64);
    assert_eq!(u32::from_le_bytes(dump[12..16].try_into().unwrap()), 48);
    assert_eq!(dump.len(), 32 + 8 * 64 * 48);
    let ma = fs::read_to_string(a.join("manifest.toml")).unwrap();
    let mb = fs::read_to_string(b.join("manifest.toml")).unwrap();
    let hash = |m: &str| m.lines().find(|l| l.starts_with("config_sha256")).unwrap().to_string();
    assert_eq!(hash(&ma), hash(&mb));
}

#[test]
fn short_liouville_run_reports_non_convergence() {
    let dir = tempfile::tempdir().unwrap();
    let body = format!("{SMALL_2D}\n[experiment]\nkind = \"liouville\"\nt_end = 0.5\n");
    let cfg = write_config(dir.path(), "c.toml", &body);
    let o = nlfront(&["experiment", "--config", &cfg, "--out", "run", "--threads", "2"], dir.path());
    assert_eq!(o.status.code(), Some(1), "{}", text(&o.stderr));
    assert!(text(&o.stderr).contains("sup|u-1|"));
    let csv = fs::read_to_string(dir.path().join("run/liouville.csv")).unwrap();
    assert!(csv.starts_with("t,sup_dev,rhs_sup\n0.5,"));
    assert!(fs::read_to_string(dir.path().join("run/manifest.toml")).unwrap().contains("threads = 2"));
}

#[test]
fn selfcheck_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = nlfront(&["selfcheck", "--out", "run"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", text(&o.stdout));
    assert_eq!(text(&o.stdout).lines().filter(|l| l.contains(" ok ")).count(), 5);
    assert!(dir.path().join("run/selfcheck.csv").exists());
}
