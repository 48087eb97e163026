mod common;

use std::fs;
use std::path::Path;
use std::process::Command;

use dirac_barrier::cli::{run_from, SweepManifest, CSV_HEADER, EXIT_CONFIG, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn run(args: &[&str]) -> i32 {
    run_from(std::iter::once("dirac-barrier").chain(args.iter().copied()))
}

fn path_arg(p: &Path) -> String {
    p.to_str().unwrap().to_string()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

fn zone<'a>(report: &'a Value, name: &str) -> &'a Vec<Value> {
    report["zones"]
        .as_array()
        .unwrap()
        .iter()
        .find(|z| z["name"] == name)
        .unwrap_or_else(|| panic!("zone {name} missing"))["resonances"]
        .as_array()
        .unwrap()
}

#[test]
fn transmission_writes_a_flux_conserving_curve() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("nested/curve.csv");
    let svg = dir.path().join("curve.svg");
    let code = run(&[
        "transmission", "--points", "5000", "--out", &path_arg(&out), "--svg", &path_arg(&svg),
    ]);
    assert_eq!(code, EXIT_OK);
    let text = fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    let rows: Vec<Vec<f64>> =
        lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 5000);
    assert!((rows[0][0] - 1.001).abs() < 1e-12);
    assert!((rows[4999][0] - 12.0).abs() < 1e-12);
    for r in &rows {
        assert!((r[1] + r[2] - 1.0).abs() < 1e-10, "{r:?}");
        assert!((r[3] * r[3] + r[4] * r[4] - r[1]).abs() < 1e-10);
    }
    assert!(fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn invalid_configuration_exits_with_config_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = path_arg(&dir.path().join("t.csv"));
    assert_eq!(run(&["transmission", "--v-plus", "5", "--v-minus", "4", "--out", &out]), EXIT_CONFIG);
    assert_eq!(run(&["transmission", "--v-minus", "1.5", "--out", &out]), EXIT_CONFIG);
    assert_eq!(run(&["transmission", "--a-plus=-1", "--out", &out]), EXIT_CONFIG);
    assert!(!dir.path().join("t.csv").exists());
}

#[test]
fn malformed_flags_exit_with_usage_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = path_arg(&dir.path().join("t.csv"));
    assert_eq!(run(&["transmission", "--points", "abc"]), EXIT_USAGE);
    assert_eq!(run(&["transmission", "--e-min", "0.5", "--out", &out]), EXIT_USAGE);
    assert_eq!(run(&["transmission", "--points", "1", "--out", &out]), EXIT_USAGE);
    assert_eq!(run(&["resonances", "--zone", "middle"]), EXIT_USAGE);
    assert_eq!(run(&["sweep", "--param", "a-minus", "--from", "1", "--to", "3", "--frames", "1"]), EXIT_USAGE);
    assert_eq!(run(&["sweep", "--param", "a-minus", "--from", "3", "--to", "1", "--frames", "4"]), EXIT_USAGE);
    assert_eq!(run(&["no-such-command"]), EXIT_USAGE);
    assert_eq!(run(&["--help"]), EXIT_OK);
}

#[test]
fn resonance_report_lists_the_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("res.json");
    assert_eq!(run(&["resonances", "--e-max", "11", "--out", &path_arg(&out)]), EXIT_OK);
    let report = read_json(&out);
    assert_eq!(report["schema"], 1);
    assert_eq!(report["config"]["v_plus"], 8);
    for (z, expected) in common::table() {
        let found = zone(&report, z.name());
        assert_eq!(found.len(), expected.len(), "{z}");
        for (r, &e) in found.iter().zip(expected) {
            assert!((r["energy"].as_f64().unwrap() - e).abs() < 1e-10);
        }
    }
    let total: usize = report["zones"].as_array().unwrap().iter().map(|z| z["resonances"].as_array().unwrap().len()).sum();
    assert_eq!(total, 23);
    assert!(zone(&report, "gap-lower").is_empty());
    assert!(zone(&report, "lower-klein")[2]["fwhm"].is_null());
    assert_eq!(zone(&report, "above-barrier").len(), 8);
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("\"energy\": 7.7033320458"));
}

#[test]
fn resonance_report_for_one_zone() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("res.json");
    assert_eq!(run(&["resonances", "--zone", "conventional", "--out", &path_arg(&out)]), EXIT_OK);
    let report = read_json(&out);
    assert_eq!(report["zones"].as_array().unwrap().len(), 1);
    assert_eq!(zone(&report, "conventional").len(), 4);
    assert_eq!(report["zones"][0]["boundaries"], serde_json::json!([7, 9]));
}

#[test]
fn resonance_counts_for_a_taller_barrier() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("res.json");
    assert_eq!(run(&["resonances", "--v-plus", "10", "--e-max", "13", "--out", &path_arg(&out)]), EXIT_OK);
    let report = read_json(&out);
    let counts: Vec<usize> =
        report["zones"].as_array().unwrap().iter().map(|z| z["resonances"].as_array().unwrap().len()).collect();
    assert_eq!(counts, vec![7, 0, 11, 4, 8]);
}

fn frame_report(dir: &Path, entry: &dirac_barrier::cli::SweepManifest, i: usize) -> Value {
    let name = entry.frames[i].resonances.as_ref().unwrap();
    read_json(&dir.join(name))
}

#[test]
fn floor_sweep_pulls_resonances_into_the_conventional_zone() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a_m");
    let code = run(&[
        "sweep", "--param", "a-minus", "--from", "1", "--to", "3", "--frames", "81", "--points", "200",
        "--resonances", "--res-e-max", "11", "--out", &path_arg(&out),
    ]);
    assert_eq!(code, EXIT_OK);
    let manifest: SweepManifest = serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest.schema, 1);
    assert_eq!(manifest.param, "a-minus");
    assert_eq!(manifest.frames.len(), 81);
    assert_eq!(manifest.fixed["a_plus"], 3.0);
    assert!(!manifest.fixed.contains_key("a_minus"));
    assert_eq!(manifest.frames[0].value, 1.0);
    assert_eq!(manifest.frames[80].value, 3.0);
    assert!(chrono::DateTime::parse_from_rfc3339(&manifest.created).is_ok());
    for f in &manifest.frames {
        let csv = fs::read_to_string(out.join(&f.file)).unwrap();
        assert_eq!(csv.lines().count(), 201);
    }
    let conv = |i| zone(&frame_report(&out, &manifest, i), "conventional").len();
    assert_eq!(conv(0), 2);
    assert_eq!(conv(80), 5);
    let lk_first = zone(&frame_report(&out, &manifest, 0), "lower-klein").len();
    let lk_last = zone(&frame_report(&out, &manifest, 80), "lower-klein").len();
    assert!(lk_last > lk_first);
}

#[test]
fn barrier_sweep_keeps_four_conventional_resonances() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a_p");
    let code = run(&[
        "sweep", "--param", "a-plus", "--from", "1", "--to", "3", "--frames", "41", "--points", "100",
        "--resonances", "--out", &path_arg(&out),
    ]);
    assert_eq!(code, EXIT_OK);
    let manifest: SweepManifest = serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest.param, "a-plus");
    assert_eq!(manifest.fixed["a_minus"], 2.5);
    for i in 0..41 {
        assert_eq!(zone(&frame_report(&out, &manifest, i), "conventional").len(), 4, "frame {i}");
    }
}

#[test]
fn sweep_out_of_range_leaves_nothing_behind() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bad");
    let code = run(&["sweep", "--param", "a-minus", "--from=-1", "--to", "2", "--frames", "3", "--out", &path_arg(&out)]);
    assert_eq!(code, EXIT_CONFIG);
    assert!(!out.exists());
}

#[test]
fn verify_passes_and_is_seeded() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.txt"), dir.path().join("b.txt"));
    assert_eq!(run(&["verify", "--samples", "2000"]), EXIT_OK);
    assert_eq!(run(&["verify", "--seed", "7", "--samples", "100", "--out", &path_arg(&a)]), EXIT_OK);
    assert_eq!(run(&["verify", "--seed", "7", "--samples", "100", "--out", &path_arg(&b)]), EXIT_OK);
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert!(text.contains("result: PASS"));
    assert_eq!(text.matches("PASS ").count(), 5);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"v_plus": 10, "a_minus": 2.5}"#).unwrap();
    let out = dir.path().join("res.json");
    let code = run(&["resonances", "--config", &path_arg(&cfg), "--a-plus", "2", "--zone", "conventional", "--out", &path_arg(&out)]);
    assert_eq!(code, EXIT_OK);
    let report = read_json(&out);
    assert_eq!(report["config"]["v_plus"], 10);
    assert_eq!(report["config"]["a_plus"], 2);
    assert_eq!(report["config"]["v_minus"], 4);

    fs::write(&cfg, r#"{"v_plus": 10, "width": 2}"#).unwrap();
    assert_eq!(run(&["resonances", "--config", &path_arg(&cfg), "--out", &path_arg(&out)]), EXIT_USAGE);
    let missing = path_arg(&dir.path().join("missing.json"));
    assert_eq!(run(&["verify", "--config", &missing]), EXIT_USAGE);
}

#[test]
fn unwritable_output_is_a_runtime_failure() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let out = path_arg(&blocker.join("t.csv"));
    assert_eq!(run(&["transmission", "--points", "10", "--out", &out]), EXIT_FAILURE);
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_dirac-barrier");
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(bin)
        .args(["transmission", "--v-plus", "5", "--v-minus", "4"])
        .current_dir(dir.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(EXIT_CONFIG));
    let output = Command::new(bin).arg("--version").output().unwrap();
    assert!(output.status.success());
    assert!(String::from_utf8_lossy(&output.stdout).contains(env!("CARGO_PKG_VERSION")));
}
