use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use epd_cli::grid::GridField;
use epd_core::specfun::{hyp0f1, normalized_j};
use tempfile::TempDir;

const CONFIGS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/configs");

fn epd(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_epd"));
    cmd.args(args).env_remove("EPD_QUAD_N");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("epd runs")
}

fn config(name: &str) -> String {
    format!("{CONFIGS}/{name}.toml")
}

fn scenario(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn read_field(path: &Path) -> GridField {
    GridField::from_csv(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

/// `(check, status, measured)` from a report line.
fn report_line(report: &str, check: &str) -> (String, f64) {
    let line = report
        .lines()
        .find(|l| l.starts_with(&format!("{check},")))
        .unwrap_or_else(|| panic!("{check} missing:\n{report}"));
    let cols: Vec<&str> = line.split(',').collect();
    (cols[1].to_string(), cols[2].parse().unwrap())
}

const SMALL_EXAMPLE_ONE: &str = r#"
problem.gamma = ["2/3"]
problem.k = "5/2"
problem.datum.preset = "jbessel"
grid.x = [{ min = 0, max = 2, count = 6 }]
grid.t = { min = 0, max = 2, count = 5 }
"#;

#[test]
fn csv_round_trip_is_bit_exact() {
    let awkward = [0.1 + 0.2, -0.0, 1e-300, f64::MIN_POSITIVE, -1.0 / 3.0, 123456789.12345679, f64::MAX];
    let mut field = GridField::fill(vec![vec![0.0, 0.5], vec![1.0, 2.0, 3.0]], vec![0.0, 1.0 / 3.0], |x, t| {
        let i = (x[0] * 2.0 + x[1] + 3.0 * t) as usize;
        Ok(awkward[i % awkward.len()] * (1.0 + t))
    })
    .unwrap();
    field.set_meta("route", "direct");
    field.set_meta("config", "[problem]\nk = 2.5");
    let back = GridField::from_csv(&field.to_csv()).unwrap();
    assert_eq!(back.x_axes, field.x_axes);
    assert_eq!(back.t_axis, field.t_axis);
    assert_eq!(back.metadata, field.metadata);
    for (a, b) in back.values.iter().zip(&field.values) {
        assert_eq!(a.to_bits(), b.to_bits());
    }
}

#[test]
fn solve_is_deterministic_and_hashes_the_config() {
    let dir = TempDir::new().unwrap();
    let cfg = scenario(&dir, "a.toml", SMALL_EXAMPLE_ONE);
    let cfg = cfg.to_str().unwrap();
    let (a, b, c) = (dir.path().join("a.csv"), dir.path().join("b.csv"), dir.path().join("c.csv"));
    assert!(epd(&["solve", "--config", cfg, "--out", a.to_str().unwrap()], &[]).status.success());
    assert!(epd(&["solve", "--config", cfg, "--out", b.to_str().unwrap()], &[]).status.success());
    assert!(epd(&["solve", "--config", cfg, "--out", c.to_str().unwrap()], &[("EPD_QUAD_N", "32")]).status.success());
    let (a, b, c) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap(), std::fs::read(&c).unwrap());
    assert_eq!(a, b);
    let fa = GridField::from_csv(std::str::from_utf8(&a).unwrap()).unwrap();
    let fc = GridField::from_csv(std::str::from_utf8(&c).unwrap()).unwrap();
    assert!(fa.meta("config_hash").unwrap().starts_with("sha256:"));
    assert_ne!(fa.meta("config_hash"), fc.meta("config_hash"));
    assert_eq!(fa.meta("route"), Some("direct"));
    let header = std::str::from_utf8(&a).unwrap().lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "x1,t,u");
}

#[test]
fn example_one_reproduces_the_closed_form() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("ex1.csv");
    assert!(epd(&["example", "--id", "1", "--out", out.to_str().unwrap()], &[]).status.success());
    let field = read_field(&out);
    assert_eq!(field.len(), 41 * 41);
    let mut worst: f64 = 0.0;
    for i in 0..field.len() {
        let (x, t) = field.point(i);
        let exact = normalized_j(-1.0 / 6.0, x[0]).unwrap() * normalized_j(0.75, t).unwrap();
        worst = worst.max((field.values[i] - exact).abs());
    }
    assert!(worst <= 1e-6, "{worst}");
}

#[test]
fn example_two_reproduces_the_hypergeometric_product() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("ex2.csv");
    assert!(epd(&["example", "--id", "2", "--out", out.to_str().unwrap()], &[]).status.success());
    let field = read_field(&out);
    assert_eq!(field.meta("route"), Some("descent"));
    let mut worst: f64 = 0.0;
    for i in 0..field.len() {
        let (x, t) = field.point(i);
        let exact = hyp0f1(1.25, -x[0] * x[0] / 4.0).unwrap() * hyp0f1(2.0 / 3.0, -t * t / 4.0).unwrap();
        worst = worst.max((field.values[i] - exact).abs());
    }
    assert!(worst <= 1e-4, "{worst}");
}

#[test]
fn const_preset_stays_constant() {
    let dir = TempDir::new().unwrap();
    let cfg = scenario(
        &dir,
        "c.toml",
        r#"
problem.gamma = [0.5, 1.5]
problem.k = 4
problem.datum = { preset = "const", value = 2.75 }
grid.x = [{ min = 0, max = 1, count = 3 }, { min = 0, max = 1, count = 2 }]
grid.t = { min = 0, max = 1, count = 3 }
numerics.quad_n = 16
"#,
    );
    let out = epd(&["solve", "--config", cfg.to_str().unwrap()], &[]);
    assert!(out.status.success());
    let field = GridField::from_csv(&stdout(&out)).unwrap();
    assert_eq!(field.len(), 18);
    assert!(field.values.iter().all(|v| (v - 2.75).abs() <= 1e-12), "{:?}", field.values);
}

#[test]
fn reflection_gives_an_even_surface() {
    let dir = TempDir::new().unwrap();
    let cfg = scenario(&dir, "a.toml", SMALL_EXAMPLE_ONE);
    let out = epd(&["solve", "--config", cfg.to_str().unwrap(), "--reflect"], &[]);
    assert!(out.status.success());
    let field = GridField::from_csv(&stdout(&out)).unwrap();
    assert_eq!(field.x_axes[0].len(), 11);
    assert_eq!(field.t_axis.len(), 9);
    assert_eq!(field.meta("reflected"), Some("true"));
    let (nx, nt) = (field.x_axes[0].len(), field.t_axis.len());
    for ti in 0..nt {
        for xi in 0..nx {
            let v = field.values[ti * nx + xi];
            assert_eq!(v, field.values[(nt - 1 - ti) * nx + (nx - 1 - xi)]);
        }
    }
}

#[test]
fn verify_passes_on_example_one() {
    let dir = TempDir::new().unwrap();
    let cfg = scenario(&dir, "a.toml", SMALL_EXAMPLE_ONE);
    let out = epd(&["verify", "--config", cfg.to_str().unwrap()], &[]);
    let report = stdout(&out);
    assert!(out.status.success(), "{report}");
    assert_eq!(report.lines().next(), Some("check_name,status,measured,tolerance"));
    let (status, measured) = report_line(&report, "epd.closed_form");
    assert_eq!(status, "pass");
    assert!(measured <= 1e-6);
    assert!(!report.contains(",fail,"));
}

#[test]
fn verify_flags_a_wrong_k() {
    let dir = TempDir::new().unwrap();
    let cfg = scenario(&dir, "a.toml", &format!("{SMALL_EXAMPLE_ONE}verify.closed_form_k = 3.5\n"));
    let out = epd(&["verify", "--config", cfg.to_str().unwrap(), "--suite", "epd"], &[]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report_line(&stdout(&out), "epd.closed_form").0, "fail");
}

#[test]
fn verify_transmutation_in_two_dimensions() {
    let out = epd(&["verify", "--config", &config("transmutation_n2"), "--suite", "translation"], &[]);
    let report = stdout(&out);
    assert!(out.status.success(), "{report}");
    let (status, measured) = report_line(&report, "translation.transmutation");
    assert_eq!(status, "pass");
    assert!(measured <= 1e-5);
}

#[test]
fn compare_routes_on_a_gaussian() {
    let out = epd(&["compare-routes", "--config", &config("gaussian_routes")], &[]);
    let report = stdout(&out);
    assert!(out.status.success(), "{report}");
    assert!(report_line(&report, "routes.spectral_vs_direct").1 <= 1e-5);
}

#[test]
fn compare_routes_on_the_zero_datum() {
    let dir = TempDir::new().unwrap();
    let cfg = scenario(
        &dir,
        "z.toml",
        r#"
problem.gamma = ["2/3"]
problem.k = "5/2"
problem.datum = { preset = "const", value = 0 }
grid.x = [{ min = 0, max = 2, count = 5 }]
grid.t = { min = 0, max = 2, count = 5 }
"#,
    );
    let out = epd(&["compare-routes", "--config", cfg.to_str().unwrap()], &[]);
    assert!(out.status.success());
    let report = stdout(&out);
    assert_eq!(report_line(&report, "routes.spectral_vs_direct").1, 0.0);
    assert_eq!(report_line(&report, "routes.spectral_vs_closed_form").1, 0.0);
}

#[test]
fn compare_routes_refuses_undamped_data_and_accepts_a_window() {
    let out = epd(&["compare-routes", "--config", &config("example1")], &[]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("problem.datum.window"));
    let out = epd(&["compare-routes", "--config", &config("windowed_example1")], &[]);
    let report = stdout(&out);
    assert!(out.status.success(), "{report}");
    assert!(report_line(&report, "routes.spectral_vs_closed_form").1 <= 1e-3);
}

#[test]
fn configuration_errors_exit_with_status_two() {
    let dir = TempDir::new().unwrap();
    let cfg = scenario(&dir, "a.toml", SMALL_EXAMPLE_ONE);
    let out = epd(&["solve", "--config", cfg.to_str().unwrap()], &[("EPD_QUAD_N", "4")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("EPD_QUAD_N"));
    let bad = scenario(&dir, "b.toml", &SMALL_EXAMPLE_ONE.replace("count = 6", "count = 1"));
    let out = epd(&["solve", "--config", bad.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("grid.x[0].count"));
    let out = epd(&["example", "--id", "3"], &[]);
    assert_eq!(out.status.code(), Some(2));
}
