// Copyright 2026 nhqsim Contributors
// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn nhqsim(args: &[&str], out: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_nhqsim"));
    cmd.args(args).env_remove("NHQSIM_OUT");
    if let Some(dir) = out {
        cmd.arg("--out").arg(dir);
    }
    cmd.output().unwrap()
}

fn write_config(dir: &TempDir, body: &str) -> PathBuf {
    let path = dir.path().join("run.toml");
    fs::write(&path, format!("schema_version = 1\n{body}")).unwrap();
    path
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

const UNCOUPLED: &str = r#"
[system]
n = 3
omega = 1.5
gamma = 6.0
coupling = 0.0

[task.spectrum]
parameter = "omega"
grid = { start = 1.0, stop = 2.0, points = 21 }
"#;

const OPTIMUM: &str = r#"
[system]
n = 3
omega = 1.576
gamma = 6.0
coupling = 1e-3

[task.evolve]
times = { start = 0.0, stop = 6.5, points = 27 }
targets = ["ghz_minus_i"]

[task.map]
times = { start = 0.0, stop = 6.5, points = 14 }
couplings = { start = 1e-6, stop = 1e-1, points = 6, scale = "log" }

[task.optimize]
time = [3.0, 3.5]
coupling = [5e-4, 2e-3]
"#;

#[test]
fn uncoupled_spectrum_has_all_eight_equal_at_coalescence() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, UNCOUPLED);
    let out = dir.path().join("out");
    let o = nhqsim(&["spectrum", "--config", cfg.to_str().unwrap()], Some(&out));
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let table = rows(&out.join("spectrum.csv"));
    assert_eq!(table[0][0], "omega");
    assert_eq!(table[0].len(), 17);
    let row = table
        .iter()
        .skip(1)
        .find(|r| r[0].parse::<f64>().unwrap() == 1.5)
        .unwrap();
    let values: Vec<f64> = row[1..].iter().map(|x| x.parse().unwrap()).collect();
    for k in 0..8 {
        assert!(
            values[k].abs() <= 1e-8 && (values[8 + k] + 4.5).abs() <= 1e-8,
            "{row:?}"
        );
    }
    let eps = rows(&out.join("ep_scan.csv"));
    assert_eq!(eps.len(), 2);
    assert_eq!(eps[1].last().unwrap(), "8");
}

#[test]
fn lossless_single_qubit_has_no_exceptional_points() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        r#"
[system]
n = 1
omega = 1.0
gamma = 0.0

[task.spectrum]
parameter = "omega"
grid = { start = 0.5, stop = 3.0, points = 26 }
locate = true
"#,
    );
    let out = dir.path().join("out");
    let o = nhqsim(&["spectrum", "--config", cfg.to_str().unwrap()], Some(&out));
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(rows(&out.join("ep_scan.csv")).len(), 1);
    assert_eq!(rows(&out.join("located_eps.csv")).len(), 1);
}

#[test]
fn negative_loss_is_a_config_error() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, &UNCOUPLED.replace("gamma = 6.0", "gamma = -6.0"));
    let o = nhqsim(
        &["spectrum", "--config", cfg.to_str().unwrap()],
        Some(dir.path()),
    );
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("system.gamma"), "{}", stderr(&o));
}

#[test]
fn missing_config_flag_is_a_usage_error() {
    let o = nhqsim(&["spectrum"], None);
    assert_eq!(code(&o), 1);
    let o = nhqsim(&["spectrum", "--config", "/nonexistent/run.toml"], None);
    assert_eq!(code(&o), 1);
}

#[test]
fn inverted_search_box_is_rejected() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        &OPTIMUM.replace("time = [3.0, 3.5]", "time = [3.5, 3.0]"),
    );
    let o = nhqsim(
        &["optimize", "--config", cfg.to_str().unwrap()],
        Some(dir.path()),
    );
    assert_eq!(code(&o), 1, "{}", stderr(&o));
}

#[test]
fn unknown_scenario_is_rejected() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "");
    let o = nhqsim(
        &["reproduce", "fig9", "--config", cfg.to_str().unwrap()],
        Some(dir.path()),
    );
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("fig2_map"), "{}", stderr(&o));
}

#[test]
fn optimum_scenario_reproduces() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "");
    let o = nhqsim(
        &["reproduce", "fig2_map", "--config", cfg.to_str().unwrap()],
        Some(&dir.path().join("out")),
    );
    assert_eq!(
        code(&o),
        0,
        "{}\n{}",
        String::from_utf8_lossy(&o.stdout),
        stderr(&o)
    );
}

#[test]
fn evolve_writes_grouped_amplitudes() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, OPTIMUM);
    let out = dir.path().join("out");
    let o = nhqsim(&["evolve", "--config", cfg.to_str().unwrap()], Some(&out));
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let header = &rows(&out.join("trajectory.csv"))[0];
    let moduli: Vec<&str> = header
        .iter()
        .filter(|h| h.starts_with("abs_"))
        .map(String::as_str)
        .collect();
    assert_eq!(
        moduli,
        ["abs_fff", "abs_ffe", "abs_fef", "abs_eff", "abs_fee", "abs_efe", "abs_eef", "abs_eee"]
    );
}

#[test]
fn single_time_point_gives_one_product_row() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        &OPTIMUM.replace(
            "{ start = 0.0, stop = 6.5, points = 27 }",
            "{ values = [0.0] }",
        ),
    );
    let out = dir.path().join("out");
    let o = nhqsim(&["evolve", "--config", cfg.to_str().unwrap()], Some(&out));
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let table = rows(&out.join("reports.csv"));
    assert_eq!(table.len(), 2);
    for j in 1..=3 {
        let col = table[0]
            .iter()
            .position(|h| *h == format!("S_{j}"))
            .unwrap();
        assert_eq!(table[1][col].parse::<f64>().unwrap(), 0.0);
    }
}

#[test]
fn five_qubits_evolve() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        r#"
[system]
n = 5
omega = 1.6
gamma = 6.0
coupling = 1e-3

[task.evolve]
times = { start = 0.0, stop = 5.0, points = 11 }
"#,
    );
    let out = dir.path().join("out");
    let o = nhqsim(&["evolve", "--config", cfg.to_str().unwrap()], Some(&out));
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(rows(&out.join("reports.csv")).len(), 12);
}

#[test]
fn environment_overrides_output_flag() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, UNCOUPLED);
    let env_out = dir.path().join("from_env");
    let flag_out = dir.path().join("from_flag");
    let o = Command::new(env!("CARGO_BIN_EXE_nhqsim"))
        .args([
            "spectrum",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            flag_out.to_str().unwrap(),
        ])
        .env("NHQSIM_OUT", &env_out)
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(env_out.join("spectrum.csv").exists());
    assert!(!flag_out.exists());
}

#[test]
fn show_config_round_trips() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, OPTIMUM);
    let first = nhqsim(&["show-config", "--config", cfg.to_str().unwrap()], None);
    assert_eq!(code(&first), 0, "{}", stderr(&first));
    let echoed = dir.path().join("echo.toml");
    fs::write(&echoed, &first.stdout).unwrap();
    let second = nhqsim(&["show-config", "--config", echoed.to_str().unwrap()], None);
    assert_eq!(code(&second), 0, "{}", stderr(&second));
    assert_eq!(first.stdout, second.stdout);
    assert!(String::from_utf8_lossy(&first.stdout).contains("rad/µs"));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, OPTIMUM);
    let run = |name: &str, threads: &str| {
        let out = dir.path().join(name);
        let o = nhqsim(
            &[
                "map",
                "--config",
                cfg.to_str().unwrap(),
                "--threads",
                threads,
            ],
            Some(&out),
        );
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        fs::read(out.join("map.csv")).unwrap()
    };
    assert_eq!(run("a", "1"), run("b", "3"));
}

#[test]
fn zero_threads_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, UNCOUPLED);
    let o = nhqsim(
        &[
            "spectrum",
            "--config",
            cfg.to_str().unwrap(),
            "--threads",
            "0",
        ],
        Some(dir.path()),
    );
    assert_eq!(code(&o), 1);
}

#[test]
fn shipped_configs_parse() {
    let configs = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut seen = 0;
    for entry in fs::read_dir(configs).unwrap() {
        let path = entry.unwrap().path();
        let o = nhqsim(&["show-config", "--config", path.to_str().unwrap()], None);
        assert_eq!(code(&o), 0, "{}: {}", path.display(), stderr(&o));
        seen += 1;
    }
    assert!(seen >= 4);
}
