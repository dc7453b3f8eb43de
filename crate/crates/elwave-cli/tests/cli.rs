//! End-to-end tests of the `elwave` binary: exit codes, file outputs,
//! deterministic re-runs, and the config loader.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_elwave"))
}

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("elwave-cli-{}-{}", std::process::id(), name));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    binary().args(args).output().expect("binary runs")
}

#[test]
fn alpha_gamma_emits_the_full_grid_with_manifest() {
    let dir = scratch_dir("alpha-gamma");
    let out = run(&[
        "alpha-gamma",
        "--hw0",
        "1e-4",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let csv = fs::read_to_string(dir.join("alpha_gamma.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "u_over_c,alpha,gamma,rel_deviation");
    assert_eq!(lines.len(), 21, "header plus the 20 grid rows");
    assert!(lines[1].starts_with("0.05,"));
    assert!(lines[20].starts_with("0.99,"));

    let energy = fs::read_to_string(dir.join("energy_comparison.csv")).unwrap();
    assert!(energy.starts_with("u_over_c,E_interaction,E_SR\n"));

    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("alpha-gamma.manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["subcommand"], "alpha-gamma");
    assert_eq!(manifest["outputs"].as_array().unwrap().len(), 2);
    assert_eq!(manifest["parameters"]["hw0"], "0.0001");
}

#[test]
fn reruns_are_byte_identical() {
    let dir_a = scratch_dir("rerun-a");
    let dir_b = scratch_dir("rerun-b");
    for dir in [&dir_a, &dir_b] {
        let out = run(&[
            "alpha-gamma",
            "--hw0",
            "2e-4",
            "--out",
            dir.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let a = fs::read(dir_a.join("alpha_gamma.csv")).unwrap();
    let b = fs::read(dir_b.join("alpha_gamma.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn phase_with_zero_field_has_zero_alpha() {
    let dir = scratch_dir("phase-zero");
    let out = run(&["phase", "--B", "0", "--out", dir.to_str().unwrap()]);
    assert!(out.status.success());
    let csv = fs::read_to_string(dir.join("phase.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "B,raw,alpha,n");
    assert_eq!(lines[1], "0,0,0,0");
    assert_eq!(lines.len(), 2);
}

#[test]
fn out_dir_falls_back_to_the_environment() {
    let dir = scratch_dir("env-out");
    let out = binary()
        .args(["phase", "-b", "0.5"])
        .env("ELWAVE_OUT", &dir)
        .current_dir(&dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.join("phase.csv").exists());
    assert!(dir.join("phase.manifest.json").exists());
}

#[test]
fn phase_sweep_rows_are_linear() {
    let dir = scratch_dir("phase-sweep");
    let out = run(&[
        "phase",
        "--l",
        "2",
        "--lambda",
        "2",
        "--u",
        "1",
        "--b-min",
        "0",
        "--b-max",
        "1",
        "--b-steps",
        "5",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = fs::read_to_string(dir.join("phase.csv")).unwrap();
    let rows: Vec<Vec<f64>> = csv
        .lines()
        .skip(1)
        .map(|line| line.split(',').map(|cell| cell.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 5);
    // slope 2π for l = λ, ρ̄u² = 1; raw doubles with B.
    let slope = rows[4][1] / rows[4][0];
    assert!((slope - std::f64::consts::TAU).abs() < 1e-12);
    assert!((rows[2][1] - 2.0 * rows[1][1]).abs() < 1e-12);
}

#[test]
fn absorb_rejects_quantum_above_rest_energy() {
    let dir = scratch_dir("absorb-reject");
    let out = run(&["absorb", "--hw0", "1.5", "--out", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(stderr.lines().count(), 1, "single machine-parseable line");
    assert!(stderr.contains("hw0"));
    assert!(stderr.contains("m*c^2"));
}

#[test]
fn absorb_emits_the_trace() {
    let dir = scratch_dir("absorb");
    let out = run(&["absorb", "--hw0", "0.01", "--out", dir.to_str().unwrap()]);
    assert!(out.status.success());
    let csv = fs::read_to_string(dir.join("absorb.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "n,E_n,u_n,alpha_n");
    assert!(lines.len() > 100);
    assert!(lines[1].starts_with("0,0.01,0.1,"));
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_with_unknown_key_is_a_usage_error() {
    let dir = scratch_dir("config-bad");
    let config = dir.join("bad.cfg");
    fs::write(&config, "m = 1\nplanck = 6.6\n").unwrap();
    let out = run(&[
        "fields",
        "--config",
        config.to_str().unwrap(),
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("planck"));
}

#[test]
fn missing_config_file_is_an_io_error() {
    let dir = scratch_dir("config-missing");
    let out = run(&[
        "fields",
        "--config",
        "/nonexistent/elwave.cfg",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn config_file_changes_the_phase_slope() {
    let dir = scratch_dir("config-rho");
    let config = dir.join("units.cfg");
    fs::write(&config, "# denser reference medium\nrho_bar = 4.0\n").unwrap();
    let out = run(&[
        "phase",
        "--l",
        "2",
        "--lambda",
        "2",
        "--u",
        "1",
        "-b",
        "1",
        "--config",
        config.to_str().unwrap(),
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = fs::read_to_string(dir.join("phase.csv")).unwrap();
    let raw: f64 = csv
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    // √(ρ̄u²) = 2 halves the phase relative to natural units.
    assert!((raw - std::f64::consts::PI).abs() < 1e-12);
}

#[test]
fn fields_and_spin_emit_the_named_columns() {
    let dir = scratch_dir("fields-spin");
    assert!(run(&["fields", "--u", "1", "--out", dir.to_str().unwrap()])
        .status
        .success());
    assert!(run(&["spin", "--u", "1", "--out", dir.to_str().unwrap()])
        .status
        .success());
    let fields = fs::read_to_string(dir.join("fields.csv")).unwrap();
    assert!(fields.starts_with("x,rho,E,B,phi\n"));
    let spin = fs::read_to_string(dir.join("spin.csv")).unwrap();
    assert!(spin.starts_with("x,spin\n"));
    assert!(dir.join("fields.manifest.json").exists());
    assert!(dir.join("spin.manifest.json").exists());
}

#[test]
fn electrostatic_audits_a_history_file() {
    let dir = scratch_dir("electrostatic");
    let history = dir.join("history.json");
    fs::write(
        &history,
        r#"[{"potential_step": 0.5, "delta_kinetic": 0.5}, {"potential_step": 0.25, "delta_kinetic": 0.25}]"#,
    )
    .unwrap();
    let out = run(&[
        "electrostatic",
        "--history",
        history.to_str().unwrap(),
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("electrostatic.json")).unwrap()).unwrap();
    assert_eq!(report["balanced"], true);
    assert_eq!(report["total_kinetic"], 0.75);

    fs::write(
        &history,
        r#"[{"potential_step": 0.5, "delta_kinetic": 0.5000010}]"#,
    )
    .unwrap();
    let out = run(&[
        "electrostatic",
        "--history",
        history.to_str().unwrap(),
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("violates"));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("electrostatic.json")).unwrap()).unwrap();
    assert_eq!(report["balanced"], false);
}

#[test]
fn ensemble_collapse_and_conditioning_outputs() {
    let dir = scratch_dir("ensemble");
    let out = run(&[
        "ensemble",
        "--e-total",
        "1",
        "--v-rfa",
        "0.25",
        "--normalize",
        "--exclude-min",
        "2.0",
        "--exclude-max",
        "4.0",
        "--resolution",
        "129",
        "--r-samples",
        "65",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("transmission fraction"));

    let before = fs::read_to_string(dir.join("ensemble_k_before.csv")).unwrap();
    assert!(before.starts_with("k,psi0_sq\n"));
    assert!(before.lines().nth(1).unwrap().starts_with("0,"));

    let after = fs::read_to_string(dir.join("ensemble_k_after.csv")).unwrap();
    let first_k: f64 = after
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!(
        (first_k - 0.5).abs() < 1e-12,
        "support starts at sqrt(m*V_rfa)/hbar"
    );

    let report: serde_json::Value = serde_json::from_str(
        &fs::read_to_string(dir.join("ensemble_interaction_free.json")).unwrap(),
    )
    .unwrap();
    assert!(report["energy_before"].as_f64().unwrap() > 0.0);

    let position = fs::read_to_string(dir.join("ensemble_position.csv")).unwrap();
    assert!(position.starts_with("r,re_psi,im_psi,psi_sq\n"));
    assert_eq!(position.lines().count(), 66);
}

#[test]
fn ensemble_total_reflection_is_a_domain_error() {
    let dir = scratch_dir("ensemble-reflect");
    let out = run(&[
        "ensemble",
        "--e-total",
        "1",
        "--potential",
        "2.0",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("total reflection"));
}

#[test]
fn radial_ensemble_clamps_the_domain_to_positive_radii() {
    let dir = scratch_dir("ensemble-radial");
    let out = run(&[
        "ensemble",
        "--e-total",
        "1",
        "--dim",
        "radial3",
        "--normalize",
        "--resolution",
        "65",
        "--r-samples",
        "33",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let position = fs::read_to_string(dir.join("ensemble_position.csv")).unwrap();
    let first_r: f64 = position
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(first_r, 0.0);
    let manifest = fs::read_to_string(dir.join("ensemble.manifest.json")).unwrap();
    let manifest: serde_json::Value = serde_json::from_str(&manifest).unwrap();
    assert_eq!(manifest["parameters"]["domain_min"], "0");
}

#[test]
fn ensemble_potential_steps_compose() {
    let dir = scratch_dir("ensemble-steps");
    let out = run(&[
        "ensemble",
        "--e-total",
        "1",
        "--potential",
        "-1.0",
        "--potential",
        "-2.0",
        "--resolution",
        "65",
        "--r-samples",
        "17",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    // E_T 1 → 2 → 4, so the final cutoff is 2.
    let after = fs::read_to_string(dir.join("ensemble_k_after.csv")).unwrap();
    let last_k: f64 = after
        .lines()
        .last()
        .unwrap()
        .split(',')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!((last_k - 2.0).abs() < 1e-12);
}

#[test]
fn selfenergy_and_lambshift_outputs() {
    let dir = scratch_dir("selfenergy");
    let out = run(&[
        "selfenergy",
        "--a-min",
        "0.5",
        "--a-max",
        "1.0",
        "--points",
        "3",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = fs::read_to_string(dir.join("selfenergy.csv")).unwrap();
    assert!(csv.starts_with("a,W_st,W_fluct\n"));
    assert_eq!(csv.lines().count(), 4);

    let out = run(&[
        "lambshift",
        "--c-const",
        "2.0",
        "--delta-e",
        "1.0",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("lambshift.json")).unwrap()).unwrap();
    // ln(m c² / 1) = 0 in natural units.
    assert_eq!(report["shift"], 0.0);
    assert_eq!(report["cutoff"], 1.0);

    let out = run(&[
        "lambshift",
        "--delta-e=-1.0",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn json_format_emits_object_rows() {
    let dir = scratch_dir("json-format");
    let out = run(&[
        "phase",
        "-b",
        "0.5",
        "--format",
        "json",
        "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let rows: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.join("phase.json")).unwrap()).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 1);
    assert!(rows[0]["raw"].as_f64().unwrap() > 0.0);
    assert_eq!(rows[0]["B"], 0.5);
}
